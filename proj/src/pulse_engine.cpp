#include "nvranging/pulse_engine.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "nvranging/errors.hpp"
#include "nvranging/rng.hpp"

namespace nvr {

void PulseSequence::validate() const {
  if (!(init_duration_s > 0.0)) throw DomainError("init_duration_s must be positive");
  if (!(readout_duration_s > 0.0)) throw DomainError("readout_duration_s must be positive");
  if (n_pi < 0) throw DomainError("n_pi must be non-negative");
  if (n_pi == 0 && !(rf_duration_s > 0.0)) throw DomainError("rf_duration_s must be positive");
  if (repeats < 1) throw DomainError("repeats must be at least 1");
}

double n_pi_duration(int n_pi, double half_peak_field_t, double conversion_gain,
                     double gyromagnetic_ratio_hz_per_t) {
  if (n_pi < 1) throw DomainError("N must be at least 1");
  if (!(half_peak_field_t > 0.0)) throw DomainError("B1 must be positive");
  if (!(conversion_gain > 0.0)) throw DomainError("conversion gain must be positive");
  if (!(gyromagnetic_ratio_hz_per_t > 0.0)) throw DomainError("gyromagnetic ratio must be positive");
  return n_pi / (4.0 * conversion_gain * gyromagnetic_ratio_hz_per_t * half_peak_field_t);
}

double effective_rf_duration(const PulseSequence& sequence, const NVEnsembleParams& params,
                             const RangingGeometry& geometry) {
  if (sequence.n_pi == 0) return sequence.rf_duration_s;
  return n_pi_duration(sequence.n_pi, geometry.mean_amplitude_t(), params.conversion_gain,
                       params.gyromagnetic_ratio_hz_per_t);
}

double cycle_time(const PulseSequence& sequence, const NVEnsembleParams& params,
                  const RangingGeometry& geometry) {
  return sequence.init_duration_s + effective_rf_duration(sequence, params, geometry) +
         sequence.readout_duration_s;
}

double expected_fluorescence(SpinState state, const NVEnsembleParams& params, double readout_duration_s) {
  if (!(readout_duration_s > 0.0)) throw DomainError("readout duration must be positive");
  const double bright = params.photon_rate_hz * params.collection_factor * readout_duration_s;
  return bright * (1.0 - params.contrast * (1.0 - state.population_ms0));
}

SpinState driven_population(const NVEnsembleParams& params, const RangingGeometry& geometry,
                            const PulseSequence& sequence) {
  const double phase = phase_from_distance(geometry.target_distance_m, geometry.wavelength_m());
  const double b_rf = interference_amplitude(geometry.reference_amplitude_t, geometry.signal_amplitude_t, phase);
  const double omega = rabi_frequency(local_field(b_rf, params.conversion_gain), params);
  return rabi_population(omega, effective_rf_duration(sequence, params, geometry), params.decay_time_s);
}

double expected_normalized_signal(const NVEnsembleParams& params, const RangingGeometry& geometry,
                                  const PulseSequence& sequence) {
  return 1.0 - params.contrast * (1.0 - driven_population(params, geometry, sequence).population_ms0);
}

DetectionRecord simulate_measurement(const NVEnsembleParams& params, const RangingGeometry& geometry,
                                     const PulseSequence& sequence, std::uint64_t seed, Sampling sampling) {
  params.validate();
  geometry.validate();
  sequence.validate();

  const SpinState state = driven_population(params, geometry, sequence);
  const double shots = static_cast<double>(sequence.repeats);
  const double reference_mean = shots * expected_fluorescence(SpinState{1.0}, params, sequence.readout_duration_s);
  const double signal_mean = shots * expected_fluorescence(state, params, sequence.readout_duration_s);

  DetectionRecord record;
  record.rng_seed = seed;
  if (sampling == Sampling::kNoiseFree) {
    record.reference_counts = reference_mean;
    record.signal_counts = signal_mean;
    record.normalized_signal = 1.0 - params.contrast * (1.0 - state.population_ms0);
    return record;
  }

  // Per-repeat counts are independent Poisson variables, so their sum is one
  // Poisson variable with the summed mean.
  SplitMix64 rng(seed);
  record.reference_counts = draw_counts(reference_mean, rng);
  record.signal_counts = draw_counts(signal_mean, rng);
  record.normalized_signal =
      record.reference_counts > 0.0 ? record.signal_counts / record.reference_counts : 0.0;
  return record;
}

std::vector<ScanSample> scan_distance(const NVEnsembleParams& params, const RangingGeometry& geometry,
                                      const PulseSequence& sequence, std::span<const double> distances_m,
                                      std::uint64_t seed, Sampling sampling) {
  if (distances_m.empty()) throw DomainError("distance grid is empty");
  // Workers must not throw, so every precondition is checked up front.
  for (double d : distances_m) {
    if (!(d >= 0.0)) throw DomainError("scan distances must be non-negative");
  }
  params.validate();
  geometry.validate();
  sequence.validate();

  std::vector<ScanSample> out(distances_m.size());
  auto run_range = [&](std::size_t begin, std::size_t end) {
    RangingGeometry g = geometry;
    for (std::size_t i = begin; i < end; ++i) {
      g.target_distance_m = distances_m[i];
      const auto rec = simulate_measurement(params, g, sequence, stream_seed(seed, i), sampling);
      out[i] = ScanSample{distances_m[i], rec.normalized_signal};
    }
  };

  const std::size_t n = distances_m.size();
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, n / 256));
  if (workers <= 1) {
    run_range(0, n);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      pool.emplace_back(run_range, begin, std::min(n, begin + chunk));
    }
  }
  return out;
}

}  // namespace nvr
