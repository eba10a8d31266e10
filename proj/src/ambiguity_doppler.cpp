#include "nvranging/ambiguity_doppler.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "nvranging/constants.hpp"
#include "nvranging/errors.hpp"
#include "nvranging/interferometer.hpp"

namespace nvr {

namespace {
inline constexpr double kDopplerMargin = 100.0;
// Nearest-integer rounding alone bounds the residual by half a fringe, so
// failure is flagged at a quarter fringe where the integer is no longer safe.
inline constexpr double kMaxResidualFringes = 0.25;
}

void DualPhaseMeasurement::validate() const {
  if (!(omega_minus_hz > 0.0)) throw DomainError("omega_minus must be positive");
  if (!(omega_plus_hz > omega_minus_hz)) throw DomainError("omega_plus must exceed omega_minus");
  if (!std::isfinite(phase_plus_rad) || !std::isfinite(phase_minus_rad)) {
    throw DomainError("phases must be finite");
  }
}

double wrap_phase(double phase_rad) {
  double r = std::fmod(phase_rad, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

double max_unambiguous_range_single(double frequency_hz) {
  if (!(frequency_hz > 0.0)) throw DomainError("frequency must be positive");
  return kSpeedOfLight / (2.0 * frequency_hz);
}

double max_unambiguous_range_dual(double omega_plus_hz, double omega_minus_hz) {
  if (!(omega_minus_hz >= 0.0)) throw DomainError("omega_minus must be non-negative");
  if (omega_plus_hz == omega_minus_hz) throw DomainError("degenerate carriers: no beat resolution");
  if (!(omega_plus_hz > omega_minus_hz)) throw DomainError("omega_plus must exceed omega_minus");
  return kSpeedOfLight / (2.0 * (omega_plus_hz - omega_minus_hz));
}

DualPhaseMeasurement forward_phases(double distance_m, double omega_plus_hz, double omega_minus_hz) {
  return DualPhaseMeasurement{
      wrap_phase(phase_from_distance(distance_m, wavelength_from_frequency(omega_plus_hz))),
      wrap_phase(phase_from_distance(distance_m, wavelength_from_frequency(omega_minus_hz))),
      omega_plus_hz, omega_minus_hz};
}

AmbiguityResolution resolve_ambiguity(const DualPhaseMeasurement& m) {
  m.validate();
  const double range = max_unambiguous_range_dual(m.omega_plus_hz, m.omega_minus_hz);
  const double fringe = 0.5 * wavelength_from_frequency(m.omega_plus_hz);  // distance per 2 pi of phase_plus
  const double fine_fraction = wrap_phase(m.phase_plus_rad) / kTwoPi;

  const double beat = wrap_phase(m.phase_plus_rad - m.phase_minus_rad);
  const double coarse = beat / kTwoPi * range;

  // Near either end of the beat cycle phase noise can wrap the beat, so the
  // other branch is tried as well and the more consistent one kept.
  std::array<double, 2> candidates{coarse, coarse};
  std::size_t count = 1;
  const double guard = 0.5 * fringe;
  if (coarse > range - guard) candidates[count++] = coarse - range;
  else if (coarse < guard) candidates[count++] = coarse + range;

  AmbiguityResolution best{0.0, 0, 0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < count; ++i) {
    const double c = candidates[i];
    const auto n = static_cast<long long>(std::llround(c / fringe - fine_fraction));
    const double fine = (static_cast<double>(n) + fine_fraction) * fringe;
    const double residual = fine - c;
    if (std::abs(residual) < std::abs(best.residual_m)) best = AmbiguityResolution{fine, n, c, residual};
  }

  if (!(std::abs(best.residual_m) <= kMaxResidualFringes * fringe)) {
    throw AmbiguityError("ambiguity resolution failed: coarse and fine ranges disagree");
  }
  return best;
}

double doppler_shift(double velocity_m_per_s, double wavelength_m) {
  if (!(wavelength_m > 0.0)) throw DomainError("wavelength must be positive");
  return 2.0 * velocity_m_per_s / wavelength_m;
}

DopplerVerdict doppler_negligible(double doppler_hz, double odmr_linewidth_hz) {
  if (!(odmr_linewidth_hz > 0.0)) throw DomainError("linewidth must be positive");
  const double ratio = std::abs(doppler_hz) / odmr_linewidth_hz;
  return DopplerVerdict{ratio < 1.0 / kDopplerMargin, ratio};
}

}  // namespace nvr
