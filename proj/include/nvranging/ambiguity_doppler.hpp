#pragma once

// Integer-ambiguity handling for phase ranging: unambiguous range at one or
// two carriers, wide-lane (beat) resolution of the fringe number, and the
// Doppler check against the ODMR linewidth.

namespace nvr {

struct DualPhaseMeasurement {
  double phase_plus_rad;   // [0, 2 pi), carrier omega_plus
  double phase_minus_rad;  // [0, 2 pi), carrier omega_minus
  double omega_plus_hz;
  double omega_minus_hz;

  void validate() const;
};

struct AmbiguityResolution {
  double distance_m;   // fine-phase estimate
  long long integer;   // whole half-wavelengths at omega_plus
  double coarse_m;     // beat-phase estimate
  double residual_m;   // distance_m - coarse_m
};

/// c / (2 f).
double max_unambiguous_range_single(double frequency_hz);

/// c / (2 (omega_plus - omega_minus)). Throws DomainError when degenerate.
double max_unambiguous_range_dual(double omega_plus_hz, double omega_minus_hz);

/// Phases of a target at distance_m on both carriers, reduced to [0, 2 pi).
DualPhaseMeasurement forward_phases(double distance_m, double omega_plus_hz, double omega_minus_hz);

/// Throws AmbiguityError when coarse and fine estimates disagree by more than
/// a quarter of a fine fringe (lambda_plus / 8 in distance).
AmbiguityResolution resolve_ambiguity(const DualPhaseMeasurement& measurement);

/// f_d = 2 v / lambda, signed (positive when approaching).
double doppler_shift(double velocity_m_per_s, double wavelength_m);

struct DopplerVerdict {
  bool negligible;
  double ratio;  // |f_d| / linewidth
};

/// Negligible when |f_d| < linewidth / 100.
DopplerVerdict doppler_negligible(double doppler_hz, double odmr_linewidth_hz);

/// Reduces an angle to [0, 2 pi).
double wrap_phase(double phase_rad);

}  // namespace nvr
