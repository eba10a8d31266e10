#pragma once

// Scan-curve metrics (FWHM, dI/dL) and the sensitivity / accuracy arithmetic
// that turns a response and a noise figure into ranging performance.

#include <cstddef>
#include <vector>

#include "nvranging/interferometer.hpp"
#include "nvranging/physics_core.hpp"
#include "nvranging/pulse_engine.hpp"

namespace nvr {

struct CurvePoint {
  double distance_m;
  double value;
};

struct ScanMetadata {
  int n_pi = 0;
  PulseSequence sequence;
  RangingGeometry geometry;
};

struct ScanCurve {
  std::vector<CurvePoint> points;
  ScanMetadata metadata;

  /// At least 3 points with strictly increasing distance.
  void validate() const;
};

/// Dark fringe (phi = pi mod 2 pi) closest to distance_m, but never closer to
/// zero than three quarter wavelengths so a full period fits on either side.
double dark_fringe_near(double distance_m, double wavelength_m);

/// Noise-free scan of `points` samples over [center - span/2, center + span/2]
/// with the sequence driven as an N-pi pulse.
ScanCurve noise_free_scan(const NVEnsembleParams& params, const RangingGeometry& geometry,
                          PulseSequence sequence, int n_pi, double center_m, double span_m,
                          std::size_t points);

/// One period (lambda/2) around the dark fringe near geometry.target_distance_m,
/// sampled every lambda/2000.
ScanCurve noise_free_period(const NVEnsembleParams& params, const RangingGeometry& geometry, int n_pi);

/// Full width at half maximum of the extremum nearest center_hint. The half
/// level on each side sits midway between the extremum and the next turning
/// point on that side; crossings are linearly interpolated. Throws
/// UnboundedFeatureError if a side runs off the curve first.
double fwhm_of_feature(const ScanCurve& curve, double center_hint_m);

/// Centered moving average (window clipped at the edges). For noisy scans
/// before fwhm_of_feature.
ScanCurve smooth(const ScanCurve& curve, std::size_t window);

/// dI/dL in 1/m: central differences inside, one-sided at the ends.
ScanCurve response_curve(const ScanCurve& curve);

double max_abs_value(const ScanCurve& curve);

/// max |dI/dL| for N_hi over the same for N_lo, both from noise_free_period.
double response_ratio(int n_hi, int n_lo, const NVEnsembleParams& params, const RangingGeometry& geometry);

/// Largest small-signal slope |d(normalized I)/dB_RF| in 1/T at a given RF
/// duration, taken at the quadrature bias Omega t_RF = pi/2.
double field_response(const NVEnsembleParams& params, double rf_duration_s);

/// Contrast C for which field_response equals target. Root find, rel. tol 1e-6.
double calibrate_contrast(double target_response_per_t, const NVEnsembleParams& params, double rf_duration_s);

/// eta_B = sigma sqrt(t_m) / response, T/sqrt(Hz).
double field_sensitivity(double noise_sigma, double measurement_time_s, double response_per_t);

/// eta_E = c eta_B, (V/m)/sqrt(Hz).
double electric_sensitivity(double field_sensitivity_t);

/// Relative magnetic sensitivity with unit proportionality constant:
/// sqrt(1 + t_RF/t_det) / (gamma k C sqrt(eps) t_RF exp(-t_RF/tau)).
/// +infinity at t_RF = 0; t_det may be +infinity.
double sensitivity_formula(double rf_duration_s, double detection_time_s, double decay_time_s,
                           double gyromagnetic_ratio_hz_per_t, double conversion_gain, double contrast,
                           double photon_rate_hz);

/// argmin of sensitivity_formula over t_RF in (0, 10 tau].
double optimal_rf_duration(double detection_time_s, double decay_time_s);

/// delta L = sigma / (dI/dL).
double ranging_accuracy(double noise_sigma, double response_per_m);

/// delta phi = 4 pi delta L / lambda.
double phase_sensitivity(double distance_accuracy_m, double wavelength_m);

}  // namespace nvr
