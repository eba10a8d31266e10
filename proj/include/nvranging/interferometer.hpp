#pragma once

// Two-path free-space RF interferometer: target distance -> round-trip phase
// -> interference amplitude at the sensor -> focused local field.

namespace nvr {

struct RangingGeometry {
  double carrier_frequency_hz = 2.885e9;
  double target_distance_m = 2.0;
  double reference_amplitude_t = 39e-9;  // B_a
  double signal_amplitude_t = 39e-9;     // B_b

  /// c / carrier_frequency.
  double wavelength_m() const;
  /// Mean path amplitude; equals B1 when the two paths are balanced.
  double mean_amplitude_t() const { return 0.5 * (reference_amplitude_t + signal_amplitude_t); }
  void validate() const;
};

double wavelength_from_frequency(double frequency_hz);

/// phi = 4 pi L / lambda, left unreduced.
double phase_from_distance(double distance_m, double wavelength_m);

/// |B_a + B_b e^{i phi}|. Evaluated as hypot(B_a - B_b, 2 sqrt(B_a B_b) cos(phi/2))
/// so that balanced paths give exactly 2 B |cos(phi/2)| even at the dark fringe.
double interference_amplitude(double reference_t, double signal_t, double phase_rad);

double local_field(double free_space_field_t, double conversion_gain);

}  // namespace nvr
