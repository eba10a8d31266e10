#include "nvranging/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <type_traits>
#include <variant>

#include <json.hpp>

#include "nvranging/errors.hpp"

namespace nvr {

namespace {

using json = nlohmann::json;

using Field = std::variant<double*, int*, std::uint64_t*, std::string*>;
using Section = std::map<std::string, Field>;

void assign(const std::string& where, const json& value, const Field& field) {
  std::visit(
      [&](auto* target) {
        using T = std::remove_pointer_t<decltype(target)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!value.is_number()) throw UsageError(where + ": expected a number");
          *target = value.get<double>();
        } else if constexpr (std::is_same_v<T, int>) {
          if (!value.is_number_integer()) throw UsageError(where + ": expected an integer");
          *target = value.get<int>();
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          if (!value.is_number_unsigned()) throw UsageError(where + ": expected a non-negative integer");
          *target = value.get<std::uint64_t>();
        } else {
          if (!value.is_string()) throw UsageError(where + ": expected a string");
          *target = value.get<std::string>();
        }
      },
      field);
}

void read_section(const json& doc, const std::string& name, const Section& fields) {
  if (!doc.is_object()) throw UsageError(name + ": expected an object");
  for (const auto& [key, value] : doc.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw UsageError("unknown config key: " + name + "." + key);
    assign(name + "." + key, value, it->second);
  }
}

Section sensor_fields(NVEnsembleParams& s) {
  return {{"zero_field_splitting_hz", &s.zero_field_splitting_hz},
          {"gyromagnetic_ratio_hz_per_t", &s.gyromagnetic_ratio_hz_per_t},
          {"bias_field_t", &s.bias_field_t},
          {"decay_time_s", &s.decay_time_s},
          {"contrast", &s.contrast},
          {"photon_rate_hz", &s.photon_rate_hz},
          {"collection_factor", &s.collection_factor},
          {"conversion_gain", &s.conversion_gain},
          {"odmr_linewidth_hz", &s.odmr_linewidth_hz}};
}

Section geometry_fields(RangingGeometry& g) {
  return {{"carrier_frequency_hz", &g.carrier_frequency_hz},
          {"target_distance_m", &g.target_distance_m},
          {"reference_amplitude_t", &g.reference_amplitude_t},
          {"signal_amplitude_t", &g.signal_amplitude_t}};
}

Section sequence_fields(PulseSequence& q) {
  return {{"init_duration_s", &q.init_duration_s},
          {"rf_duration_s", &q.rf_duration_s},
          {"readout_duration_s", &q.readout_duration_s},
          {"n_pi", &q.n_pi},
          {"repeats", &q.repeats}};
}

Section analysis_fields(AnalysisSettings& a) {
  return {{"field_noise_sigma", &a.field_noise_sigma},
          {"field_measurement_time_s", &a.field_measurement_time_s},
          {"field_rf_duration_s", &a.field_rf_duration_s},
          {"field_target_response_per_t", &a.field_target_response_per_t},
          {"collection_restore_factor", &a.collection_restore_factor},
          {"ranging_noise_sigma", &a.ranging_noise_sigma},
          {"detection_time_s", &a.detection_time_s}};
}

Section noise_fields(NoiseSettings& n) { return {{"drift_rate_per_s", &n.drift_rate_per_s}}; }

Section output_fields(OutputSettings& o) { return {{"path", &o.path}, {"allan_path", &o.allan_path}}; }

json section_to_json(const Section& fields) {
  json out = json::object();
  for (const auto& [key, field] : fields) {
    std::visit([&](auto* target) { out[key] = *target; }, field);
  }
  return out;
}

}  // namespace

void InstrumentConfig::validate() const {
  sensor.validate();
  geometry.validate();
  sequence.validate();
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw DomainError(std::string("analysis.") + name + " must be positive");
  };
  positive(analysis.field_noise_sigma, "field_noise_sigma");
  positive(analysis.field_measurement_time_s, "field_measurement_time_s");
  positive(analysis.field_rf_duration_s, "field_rf_duration_s");
  positive(analysis.field_target_response_per_t, "field_target_response_per_t");
  positive(analysis.collection_restore_factor, "collection_restore_factor");
  positive(analysis.ranging_noise_sigma, "ranging_noise_sigma");
  positive(analysis.detection_time_s, "detection_time_s");
  if (!std::isfinite(noise.drift_rate_per_s)) throw DomainError("noise.drift_rate_per_s must be finite");
}

InstrumentConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config root must be an object");

  InstrumentConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "sensor") read_section(value, key, sensor_fields(cfg.sensor));
    else if (key == "geometry") read_section(value, key, geometry_fields(cfg.geometry));
    else if (key == "sequence") read_section(value, key, sequence_fields(cfg.sequence));
    else if (key == "analysis") read_section(value, key, analysis_fields(cfg.analysis));
    else if (key == "noise") read_section(value, key, noise_fields(cfg.noise));
    else if (key == "output") read_section(value, key, output_fields(cfg.output));
    else if (key == "seed") assign("seed", value, &cfg.seed);
    else throw UsageError("unknown config key: " + key);
  }
  cfg.validate();
  return cfg;
}

InstrumentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const InstrumentConfig& config) {
  InstrumentConfig copy = config;
  json doc = {{"sensor", section_to_json(sensor_fields(copy.sensor))},
              {"geometry", section_to_json(geometry_fields(copy.geometry))},
              {"sequence", section_to_json(sequence_fields(copy.sequence))},
              {"analysis", section_to_json(analysis_fields(copy.analysis))},
              {"noise", section_to_json(noise_fields(copy.noise))},
              {"output", section_to_json(output_fields(copy.output))},
              {"seed", copy.seed}};
  return doc.dump(2) + "\n";
}

}  // namespace nvr
