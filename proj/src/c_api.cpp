#include "nvranging/nvranging.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "nvranging/ambiguity_doppler.hpp"
#include "nvranging/commands.hpp"
#include "nvranging/config.hpp"
#include "nvranging/errors.hpp"
#include "nvranging/noise_stats.hpp"
#include "nvranging/pulse_engine.hpp"
#include "nvranging/ranging_analysis.hpp"

struct nvr_config {
  nvr::InstrumentConfig value;
};

namespace {

thread_local std::string g_last_error;

nvr_status fail(nvr_status code, const char* what) {
  g_last_error = what;
  return code;
}

// Maps the C++ exception hierarchy onto status codes.
template <typename Fn>
nvr_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return NVR_OK;
  } catch (const nvr::UsageError& e) {
    return fail(NVR_ERR_USAGE, e.what());
  } catch (const nvr::AmbiguityError& e) {
    return fail(NVR_ERR_AMBIGUITY, e.what());
  } catch (const nvr::DomainError& e) {
    return fail(NVR_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NVR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(NVR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(NVR_ERR_INTERNAL, "unknown error");
  }
}

char* copy_out(const std::string& s) {
  auto* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require_arg(bool ok, const char* what) {
  if (!ok) throw nvr::UsageError(what);
}

}  // namespace

extern "C" {

const char* nvr_last_error(void) { return g_last_error.c_str(); }

const char* nvr_version(void) { return "1.0.0"; }

void nvr_string_free(char* text) { std::free(text); }

nvr_status nvr_config_new_default(nvr_config** out) {
  return guarded([&] {
    require_arg(out != nullptr, "null output handle");
    *out = new nvr_config{};
  });
}

nvr_status nvr_config_load_file(const char* path, nvr_config** out) {
  return guarded([&] {
    require_arg(path != nullptr && out != nullptr, "null argument");
    *out = new nvr_config{nvr::load_config_file(path)};
  });
}

nvr_status nvr_config_parse(const char* json_text, nvr_config** out) {
  return guarded([&] {
    require_arg(json_text != nullptr && out != nullptr, "null argument");
    *out = new nvr_config{nvr::parse_config(json_text)};
  });
}

void nvr_config_free(nvr_config* config) { delete config; }

nvr_status nvr_config_set_seed(nvr_config* config, uint64_t seed) {
  return guarded([&] {
    require_arg(config != nullptr, "null config");
    config->value.seed = seed;
  });
}

nvr_status nvr_config_get_seed(const nvr_config* config, uint64_t* seed) {
  return guarded([&] {
    require_arg(config != nullptr && seed != nullptr, "null argument");
    *seed = config->value.seed;
  });
}

nvr_status nvr_config_output_paths(const nvr_config* config, char** path, char** allan_path) {
  return guarded([&] {
    require_arg(config != nullptr && path != nullptr && allan_path != nullptr, "null argument");
    *path = copy_out(config->value.output.path);
    *allan_path = copy_out(config->value.output.allan_path);
  });
}

nvr_status nvr_config_to_json(const nvr_config* config, char** json_out) {
  return guarded([&] {
    require_arg(config != nullptr && json_out != nullptr, "null argument");
    *json_out = copy_out(nvr::config_to_json(config->value));
  });
}

nvr_status nvr_cmd_odmr(const nvr_config* config, double f_min, double f_max, size_t points, char** csv_out) {
  return guarded([&] {
    require_arg(config != nullptr && csv_out != nullptr, "null argument");
    *csv_out = copy_out(nvr::app::cmd_odmr(config->value, f_min, f_max, points));
  });
}

nvr_status nvr_cmd_rabi(const nvr_config* config, double t_max, size_t points, char** csv_out) {
  return guarded([&] {
    require_arg(config != nullptr && csv_out != nullptr, "null argument");
    *csv_out = copy_out(nvr::app::cmd_rabi(config->value, t_max, points));
  });
}

nvr_status nvr_cmd_scan(const nvr_config* config, int n_pi, double l_center, double l_span, size_t points,
                        uint64_t repeats, int noise_free, char** csv_out) {
  return guarded([&] {
    require_arg(config != nullptr && csv_out != nullptr, "null argument");
    nvr::app::ScanRequest request;
    request.n_pi = n_pi;
    if (!std::isnan(l_center)) request.center_m = l_center;
    if (!std::isnan(l_span)) request.span_m = l_span;
    request.points = points;
    if (repeats > 0) request.repeats = repeats;
    request.noise_free = noise_free != 0;
    *csv_out = copy_out(nvr::app::cmd_scan(config->value, request));
  });
}

nvr_status nvr_cmd_metrics(const nvr_config* config, const int* n_list, size_t n_count, char** json_out) {
  return guarded([&] {
    require_arg(config != nullptr && json_out != nullptr, "null argument");
    require_arg(n_list != nullptr || n_count == 0, "null N list");
    const std::span<const int> ns(n_list, n_count);
    *json_out = copy_out(nvr::app::cmd_metrics(config->value, ns));
  });
}

nvr_status nvr_cmd_track(const nvr_config* config, double duration, double sample_interval, int noise_free,
                         char** csv_out, char** allan_json_out) {
  return guarded([&] {
    require_arg(config != nullptr && csv_out != nullptr && allan_json_out != nullptr, "null argument");
    const auto out = nvr::app::cmd_track(config->value, duration, sample_interval, noise_free != 0);
    char* csv = copy_out(out.csv);
    try {
      *allan_json_out = copy_out(out.allan_json);
    } catch (...) {
      std::free(csv);
      throw;
    }
    *csv_out = csv;
  });
}

nvr_status nvr_cmd_ambiguity(const nvr_config* config, double l_true, double phase_noise, char** json_out) {
  return guarded([&] {
    require_arg(config != nullptr && json_out != nullptr, "null argument");
    *json_out = copy_out(nvr::app::cmd_ambiguity(config->value, l_true, phase_noise));
  });
}

nvr_status nvr_resonance_frequencies(const nvr_config* config, double* omega_plus, double* omega_minus) {
  return guarded([&] {
    require_arg(config != nullptr && omega_plus != nullptr && omega_minus != nullptr, "null argument");
    const auto lines = nvr::resonance_frequencies(config->value.sensor);
    *omega_plus = lines.plus_hz;
    *omega_minus = lines.minus_hz;
  });
}

nvr_status nvr_rabi_population(double rabi_rad_per_s, double time_s, double decay_time_s, double* population) {
  return guarded([&] {
    require_arg(population != nullptr, "null argument");
    *population = nvr::rabi_population(rabi_rad_per_s, time_s, decay_time_s).population_ms0;
  });
}

nvr_status nvr_n_pi_duration(int n_pi, double b1, double conversion_gain, double gyromagnetic_ratio,
                             double* duration_s) {
  return guarded([&] {
    require_arg(duration_s != nullptr, "null argument");
    *duration_s = nvr::n_pi_duration(n_pi, b1, conversion_gain, gyromagnetic_ratio);
  });
}

nvr_status nvr_simulate_measurement(const nvr_config* config, double distance_m, uint64_t seed, int noise_free,
                                    nvr_detection_record* out) {
  return guarded([&] {
    require_arg(config != nullptr && out != nullptr, "null argument");
    nvr::RangingGeometry geometry = config->value.geometry;
    geometry.target_distance_m = distance_m;
    const auto rec = nvr::simulate_measurement(config->value.sensor, geometry, config->value.sequence, seed,
                                               noise_free ? nvr::Sampling::kNoiseFree : nvr::Sampling::kShotNoise);
    *out = nvr_detection_record{rec.reference_counts, rec.signal_counts, rec.normalized_signal, rec.rng_seed};
  });
}

nvr_status nvr_field_sensitivity(double noise_sigma, double measurement_time_s, double response_per_t,
                                 double* eta_t) {
  return guarded([&] {
    require_arg(eta_t != nullptr, "null argument");
    *eta_t = nvr::field_sensitivity(noise_sigma, measurement_time_s, response_per_t);
  });
}

nvr_status nvr_ranging_accuracy(double noise_sigma, double response_per_m, double* accuracy_m) {
  return guarded([&] {
    require_arg(accuracy_m != nullptr, "null argument");
    *accuracy_m = nvr::ranging_accuracy(noise_sigma, response_per_m);
  });
}

nvr_status nvr_resolve_ambiguity(double phase_plus, double phase_minus, double omega_plus, double omega_minus,
                                 double* distance_m, long long* integer, double* residual_m) {
  return guarded([&] {
    require_arg(distance_m != nullptr && integer != nullptr && residual_m != nullptr, "null argument");
    const auto r = nvr::resolve_ambiguity(nvr::DualPhaseMeasurement{phase_plus, phase_minus, omega_plus, omega_minus});
    *distance_m = r.distance_m;
    *integer = r.integer;
    *residual_m = r.residual_m;
  });
}

nvr_status nvr_allan_deviation(const double* samples, size_t count, double sample_interval, const double* taus,
                               size_t tau_count, double* sigma_out) {
  return guarded([&] {
    require_arg(samples != nullptr && (taus != nullptr || tau_count == 0) &&
                    (sigma_out != nullptr || tau_count == 0),
                "null argument");
    nvr::TimeSeries series{std::vector<double>(samples, samples + count), sample_interval};
    const auto points = nvr::allan_deviation(series, std::span<const double>(taus, tau_count));
    for (std::size_t i = 0; i < points.size(); ++i) {
      sigma_out[i] = points[i].deviation.value_or(std::numeric_limits<double>::quiet_NaN());
    }
  });
}

}  // extern "C"
