#include "nvranging/interferometer.hpp"

#include <cmath>

#include "nvranging/constants.hpp"
#include "nvranging/errors.hpp"

namespace nvr {

double RangingGeometry::wavelength_m() const { return wavelength_from_frequency(carrier_frequency_hz); }

void RangingGeometry::validate() const {
  if (!(carrier_frequency_hz > 0.0)) throw DomainError("carrier_frequency_hz must be positive");
  if (!(target_distance_m >= 0.0)) throw DomainError("target_distance_m must be non-negative");
  if (!(reference_amplitude_t >= 0.0)) throw DomainError("reference_amplitude_t must be non-negative");
  if (!(signal_amplitude_t >= 0.0)) throw DomainError("signal_amplitude_t must be non-negative");
}

double wavelength_from_frequency(double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw DomainError("frequency must be positive");
  return kSpeedOfLight / frequency_hz;
}

double phase_from_distance(double distance_m, double wavelength_m) {
  if (!(wavelength_m > 0.0)) throw DomainError("wavelength must be positive");
  if (!(distance_m >= 0.0)) throw DomainError("distance must be non-negative");
  return 4.0 * kPi * distance_m / wavelength_m;
}

double interference_amplitude(double reference_t, double signal_t, double phase_rad) {
  if (!(reference_t >= 0.0) || !(signal_t >= 0.0)) {
    throw DomainError("path amplitudes must be non-negative");
  }
  // B_a^2 + B_b^2 + 2 B_a B_b cos(phi) == (B_a - B_b)^2 + 4 B_a B_b cos^2(phi/2)
  const double cross = 2.0 * std::sqrt(reference_t * signal_t) * std::cos(0.5 * phase_rad);
  return std::hypot(reference_t - signal_t, cross);
}

double local_field(double free_space_field_t, double conversion_gain) {
  if (!(free_space_field_t >= 0.0)) throw DomainError("free-space field must be non-negative");
  if (!(conversion_gain > 0.0)) throw DomainError("conversion gain must be positive");
  return conversion_gain * free_space_field_t;
}

}  // namespace nvr
