#include "nvranging/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include <json.hpp>

#include "nvranging/ambiguity_doppler.hpp"
#include "nvranging/errors.hpp"
#include "nvranging/noise_stats.hpp"
#include "nvranging/ranging_analysis.hpp"
#include "nvranging/rng.hpp"

namespace nvr::app {

namespace {

using json = nlohmann::json;

// Two periods around the dark fringe so the N = 1 baseline minima are interior.
constexpr std::size_t kMetricsPoints = 2001;

void require_usage(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

std::vector<double> linspace(double lo, double hi, std::size_t points) {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

void append_row(std::string& out, std::initializer_list<double> fields) {
  bool first = true;
  for (double v : fields) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

struct OperatingPoint {
  double distance_m;
  double response_per_m;
};

OperatingPoint steepest_point(const InstrumentConfig& config, int n_pi) {
  const ScanCurve slope = response_curve(noise_free_period(config.sensor, config.geometry, n_pi));
  const auto it = std::max_element(slope.points.begin(), slope.points.end(), [](const auto& a, const auto& b) {
    return std::abs(a.value) < std::abs(b.value);
  });
  return OperatingPoint{it->distance_m, std::abs(it->value)};
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string cmd_odmr(const InstrumentConfig& config, double f_min_hz, double f_max_hz, std::size_t points) {
  require_usage(points >= 1, "odmr: points must be at least 1");
  require_usage(f_min_hz > 0.0 && f_max_hz >= f_min_hz && (points == 1 || f_max_hz > f_min_hz),
                "odmr: invalid frequency range");
  config.validate();

  std::string out = "frequency_hz,normalized_fluorescence\n";
  for (double f : linspace(f_min_hz, f_max_hz, points)) {
    append_row(out, {f, 1.0 - odmr_contrast(f, config.sensor)});
  }
  return out;
}

std::string cmd_rabi(const InstrumentConfig& config, double t_max_s, std::size_t points) {
  require_usage(points >= 1, "rabi: points must be at least 1");
  require_usage(t_max_s >= 0.0 && (points == 1 || t_max_s > 0.0), "rabi: invalid time range");
  config.validate();

  const auto& g = config.geometry;
  const double drive = interference_amplitude(g.reference_amplitude_t, g.signal_amplitude_t, 0.0);
  const double omega = rabi_frequency(local_field(drive, config.sensor.conversion_gain), config.sensor);

  const double bright = expected_fluorescence(SpinState{1.0}, config.sensor, config.sequence.readout_duration_s);
  std::string out = "time_s,population,normalized_fluorescence\n";
  for (double t : linspace(0.0, t_max_s, points)) {
    const SpinState s = rabi_population(omega, t, config.sensor.decay_time_s);
    append_row(out, {t, s.population_ms0,
                     expected_fluorescence(s, config.sensor, config.sequence.readout_duration_s) / bright});
  }
  return out;
}

std::string cmd_scan(const InstrumentConfig& config, const ScanRequest& request) {
  require_usage(request.points >= 1, "scan: points must be at least 1");
  require_usage(request.n_pi >= 0, "scan: N must be non-negative");
  config.validate();

  PulseSequence sequence = config.sequence;
  if (request.n_pi > 0) sequence.n_pi = request.n_pi;
  if (request.repeats) {
    require_usage(*request.repeats >= 1, "scan: repeats must be at least 1");
    sequence.repeats = *request.repeats;
  }

  const double lambda = config.geometry.wavelength_m();
  const double center = request.center_m.value_or(dark_fringe_near(config.geometry.target_distance_m, lambda));
  const double span = request.span_m.value_or(lambda);
  require_usage(span >= 0.0 && (request.points == 1 || span > 0.0), "scan: L_span must be positive");
  require_usage(center - 0.5 * span >= 0.0, "scan: grid reaches negative distances");

  const auto grid = linspace(center - 0.5 * span, center + 0.5 * span, request.points);
  const auto samples = scan_distance(config.sensor, config.geometry, sequence, grid, config.seed,
                                     request.noise_free ? Sampling::kNoiseFree : Sampling::kShotNoise);

  std::string out = "distance_m,normalized_signal\n";
  for (const auto& s : samples) append_row(out, {s.distance_m, s.normalized_signal});
  return out;
}

std::string cmd_metrics(const InstrumentConfig& config, std::span<const int> n_list) {
  require_usage(!n_list.empty(), "metrics: N_list must not be empty");
  for (int n : n_list) require_usage(n >= 1, "metrics: every N must be at least 1");
  config.validate();

  const auto& a = config.analysis;
  const auto& sensor = config.sensor;
  const double lambda = config.geometry.wavelength_m();
  const double center = dark_fringe_near(config.geometry.target_distance_m, lambda);

  const double response_field = field_response(sensor, a.field_rf_duration_s);
  const double eta = field_sensitivity(a.field_noise_sigma, a.field_measurement_time_s, response_field);
  const double eta_full = eta / std::sqrt(a.collection_restore_factor);

  json report;
  report["wavelength_m"] = lambda;
  report["contrast"] = sensor.contrast;
  report["calibrated_contrast"] = calibrate_contrast(a.field_target_response_per_t, sensor, a.field_rf_duration_s);
  report["field_response_per_t"] = response_field;
  report["field_sensitivity_t_per_rthz"] = eta;
  report["field_sensitivity_full_collection_t_per_rthz"] = eta_full;
  report["electric_sensitivity_v_per_m_per_rthz"] = electric_sensitivity(eta_full);
  report["optimal_rf_duration_s"] = optimal_rf_duration(a.detection_time_s, sensor.decay_time_s);

  auto fwhm_for = [&](int n) {
    return fwhm_of_feature(noise_free_scan(sensor, config.geometry, config.sequence, n, center, lambda, kMetricsPoints),
                           center);
  };
  const double fwhm_1 = fwhm_for(1);
  const double slope_1 = max_abs_value(response_curve(noise_free_period(sensor, config.geometry, 1)));

  json per_n = json::array();
  for (int n : n_list) {
    const double fwhm = fwhm_for(n);
    const double slope = max_abs_value(response_curve(noise_free_period(sensor, config.geometry, n)));
    const double accuracy = ranging_accuracy(a.ranging_noise_sigma, slope);
    per_n.push_back({{"n", n},
                     {"rf_duration_s", n_pi_duration(n, config.geometry.mean_amplitude_t(), sensor.conversion_gain,
                                                     sensor.gyromagnetic_ratio_hz_per_t)},
                     {"fwhm_m", fwhm},
                     {"fwhm_ratio_to_n1", fwhm_1 / fwhm},
                     {"max_didl_per_m", slope},
                     {"response_ratio_to_n1", slope / slope_1},
                     {"accuracy_m_at_1s", accuracy},
                     {"phase_rad_per_rthz", phase_sensitivity(accuracy, lambda)}});
  }
  report["per_n"] = std::move(per_n);
  return report.dump(2) + "\n";
}

TrackOutput cmd_track(const InstrumentConfig& config, double duration_s, double sample_interval_s,
                      bool noise_free) {
  require_usage(sample_interval_s > 0.0, "track: sample_interval must be positive");
  require_usage(duration_s > 0.0, "track: duration must be positive");
  require_usage(config.sequence.n_pi >= 1, "track: sequence.n_pi must select an N-pi pulse");
  config.validate();

  const auto samples = static_cast<std::size_t>(std::floor(duration_s / sample_interval_s + 1e-9));
  require_usage(samples >= 2, "track: duration must cover at least 2 samples");

  const int n_pi = config.sequence.n_pi;
  const OperatingPoint op = steepest_point(config, n_pi);

  RangingGeometry geometry = config.geometry;
  geometry.target_distance_m = op.distance_m;
  PulseSequence sequence = config.sequence;
  sequence.repeats = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::floor(sample_interval_s / cycle_time(sequence, config.sensor, geometry))));

  TimeSeries series{std::vector<double>(samples), sample_interval_s};
  std::string csv = "time_s,normalized_signal\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = sample_interval_s * static_cast<double>(i);
    const auto rec = simulate_measurement(config.sensor, geometry, sequence, stream_seed(config.seed, i),
                                          noise_free ? Sampling::kNoiseFree : Sampling::kShotNoise);
    series.samples[i] = rec.normalized_signal + config.noise.drift_rate_per_s * t;
    append_row(csv, {t, series.samples[i]});
  }

  const auto taus = default_allan_taus(series);
  const auto allan = allan_deviation(series, taus);
  const auto ranging = ranging_deviation(allan, op.response_per_m);

  json table = json::array();
  for (std::size_t i = 0; i < allan.size(); ++i) {
    json row = {{"tau_s", allan[i].tau_s}};
    row["allan_deviation"] = allan[i].deviation ? json(*allan[i].deviation) : json(nullptr);
    row["ranging_deviation_m"] = ranging[i].deviation_m ? json(*ranging[i].deviation_m) : json(nullptr);
    if (!allan[i].error.empty()) row["error"] = allan[i].error;
    table.push_back(std::move(row));
  }
  json report = {{"seed", config.seed},
                 {"n", n_pi},
                 {"noise_free", noise_free},
                 {"operating_distance_m", op.distance_m},
                 {"response_per_m", op.response_per_m},
                 {"repeats_per_sample", sequence.repeats},
                 {"sample_interval_s", sample_interval_s},
                 {"samples", samples},
                 {"drift_rate_per_s", config.noise.drift_rate_per_s},
                 {"allan", std::move(table)}};
  return TrackOutput{std::move(csv), report.dump(2) + "\n"};
}

std::string cmd_ambiguity(const InstrumentConfig& config, double true_distance_m, double phase_noise_rad) {
  require_usage(phase_noise_rad >= 0.0, "ambiguity: phase_noise must be non-negative");
  config.validate();
  if (!(true_distance_m >= 0.0)) throw DomainError("ambiguity: L_true must be non-negative");

  const auto lines = resonance_frequencies(config.sensor);
  const double rmax_single = max_unambiguous_range_single(lines.plus_hz);
  const double rmax_dual = max_unambiguous_range_dual(lines.plus_hz, lines.minus_hz);
  if (!(true_distance_m < rmax_dual)) {
    throw AmbiguityError("ambiguity: L_true is beyond the dual-frequency unambiguous range");
  }

  DualPhaseMeasurement m = forward_phases(true_distance_m, lines.plus_hz, lines.minus_hz);
  if (phase_noise_rad > 0.0) {
    SplitMix64 rng(config.seed);
    std::normal_distribution<double> noise(0.0, phase_noise_rad);
    m.phase_plus_rad = wrap_phase(m.phase_plus_rad + noise(rng));
    m.phase_minus_rad = wrap_phase(m.phase_minus_rad + noise(rng));
  }
  const AmbiguityResolution r = resolve_ambiguity(m);

  json report = {{"L_true", true_distance_m},
                 {"phase_plus", m.phase_plus_rad},
                 {"phase_minus", m.phase_minus_rad},
                 {"L_hat", r.distance_m},
                 {"L_coarse", r.coarse_m},
                 {"n", r.integer},
                 {"residual", r.residual_m},
                 {"rmax_single", rmax_single},
                 {"rmax_dual", rmax_dual}};
  return report.dump(2) + "\n";
}

}  // namespace nvr::app
