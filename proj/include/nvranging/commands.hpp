#pragma once

// The command set behind the CLI. Each command returns its output documents
// as strings so callers (CLI, C API, tests) decide where bytes go.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "nvranging/config.hpp"

namespace nvr::app {

struct ScanRequest {
  int n_pi = 0;                          // 0: use config sequence.n_pi
  std::optional<double> center_m;        // default: dark fringe near target distance
  std::optional<double> span_m;          // default: one wavelength
  std::size_t points = 2001;
  std::optional<std::uint64_t> repeats;  // default: config sequence.repeats
  bool noise_free = false;
};

struct TrackOutput {
  std::string csv;
  std::string allan_json;
};

/// frequency_hz,normalized_fluorescence
std::string cmd_odmr(const InstrumentConfig& config, double f_min_hz, double f_max_hz, std::size_t points);

/// time_s,population,normalized_fluorescence under the constructive drive B_a + B_b.
std::string cmd_rabi(const InstrumentConfig& config, double t_max_s, std::size_t points);

/// distance_m,normalized_signal
std::string cmd_scan(const InstrumentConfig& config, const ScanRequest& request);

/// Per-N resolution and accuracy figures plus the field/electric sensitivity chain.
std::string cmd_metrics(const InstrumentConfig& config, std::span<const int> n_list);

/// time_s,normalized_signal trace at the steepest point of the dark fringe,
/// and its Allan / ranging deviation table.
TrackOutput cmd_track(const InstrumentConfig& config, double duration_s, double sample_interval_s,
                      bool noise_free);

/// Forward-simulates both carrier phases for L_true, adds Gaussian phase
/// noise and resolves the integer ambiguity.
std::string cmd_ambiguity(const InstrumentConfig& config, double true_distance_m, double phase_noise_rad);

/// %.17g
std::string format_number(double value);

}  // namespace nvr::app
