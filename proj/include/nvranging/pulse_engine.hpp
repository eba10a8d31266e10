#pragma once

// Measurement sequence: laser init (reference I0), RF drive, laser readout
// (signal I(L)). Produces photon-count records under shot noise.

#include <cstdint>
#include <span>
#include <vector>

#include "nvranging/interferometer.hpp"
#include "nvranging/physics_core.hpp"

namespace nvr {

struct PulseSequence {
  double init_duration_s = 550e-9;
  double rf_duration_s = 265e-9;  // used when n_pi == 0
  double readout_duration_s = 550e-9;
  int n_pi = 4;                   // 0 selects the free-form rf_duration_s
  std::uint64_t repeats = 200'000;

  void validate() const;
};

struct DetectionRecord {
  double reference_counts = 0.0;
  double signal_counts = 0.0;
  double normalized_signal = 0.0;
  std::uint64_t rng_seed = 0;
};

enum class Sampling { kShotNoise, kNoiseFree };

struct ScanSample {
  double distance_m;
  double normalized_signal;
};

/// RF duration of an N-pi pulse: N / (4 k gamma B1).
double n_pi_duration(int n_pi, double half_peak_field_t, double conversion_gain,
                     double gyromagnetic_ratio_hz_per_t);

/// RF duration the sequence actually applies for this geometry.
double effective_rf_duration(const PulseSequence& sequence, const NVEnsembleParams& params,
                             const RangingGeometry& geometry);

/// Wall time of one init/RF/readout cycle.
double cycle_time(const PulseSequence& sequence, const NVEnsembleParams& params,
                  const RangingGeometry& geometry);

/// Mean detected counts per shot for a given spin population.
double expected_fluorescence(SpinState state, const NVEnsembleParams& params, double readout_duration_s);

/// Population of ms=0 after the RF pulse at the geometry's target distance.
SpinState driven_population(const NVEnsembleParams& params, const RangingGeometry& geometry,
                            const PulseSequence& sequence);

/// Exact mean of normalized_signal, 1 - C (1 - rho).
double expected_normalized_signal(const NVEnsembleParams& params, const RangingGeometry& geometry,
                                  const PulseSequence& sequence);

/// One averaged measurement. Deterministic in (inputs, seed).
DetectionRecord simulate_measurement(const NVEnsembleParams& params, const RangingGeometry& geometry,
                                     const PulseSequence& sequence, std::uint64_t seed,
                                     Sampling sampling = Sampling::kShotNoise);

/// Distance sweep; point i uses stream_seed(seed, i). Output keeps input order.
std::vector<ScanSample> scan_distance(const NVEnsembleParams& params, const RangingGeometry& geometry,
                                      const PulseSequence& sequence, std::span<const double> distances_m,
                                      std::uint64_t seed, Sampling sampling = Sampling::kShotNoise);

/// Total photon count over all repeats: variance equals mean.
template <typename Rng>
double draw_counts(double mean, Rng& rng);

}  // namespace nvr

#include "nvranging/detail/counting.hpp"
