#pragma once

// Spin-level forward model of the NV ensemble: resonance lines, ODMR dip
// shape and driven Rabi population with an exponential decay envelope.
// All quantities are SI.

namespace nvr {

struct NVEnsembleParams {
  double zero_field_splitting_hz = 2.87e9;
  double gyromagnetic_ratio_hz_per_t = 2.8e10;  // 2.8 MHz/G
  double bias_field_t = 5.357142857142857e-4;   // puts the upper line at 2.885 GHz
  double decay_time_s = 460e-9;
  double contrast = 0.11046296627834645;  // see config/default.json
  double photon_rate_hz = 9.3e7;
  double collection_factor = 0.1;
  double conversion_gain = 7.6e3;
  double odmr_linewidth_hz = 10e6;

  /// Throws DomainError naming the first offending field.
  void validate() const;
};

struct SpinState {
  double population_ms0 = 1.0;
};

struct ResonancePair {
  double plus_hz;
  double minus_hz;
};

/// omega_pm = D +- gamma * Bz. Bz is signed along the NV axis; a negative value
/// swaps the two lines. Throws if either line would be non-positive.
ResonancePair resonance_frequencies(const NVEnsembleParams& params);

/// Angular Rabi frequency 2 pi gamma B_loc, rad/s.
double rabi_frequency(double local_field_t, const NVEnsembleParams& params);

/// rho_0 = (1 + exp(-t/tau) cos(Omega t)) / 2. tau may be +infinity.
SpinState rabi_population(double rabi_rad_per_s, double time_s, double decay_time_s);

/// Fractional fluorescence reduction at a CW probe frequency, in [0, C].
double odmr_contrast(double probe_frequency_hz, const NVEnsembleParams& params);

}  // namespace nvr
