#include "nvranging/physics_core.hpp"

#include <cmath>
#include <string>

#include "nvranging/constants.hpp"
#include "nvranging/errors.hpp"

namespace nvr {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || std::isnan(v)) {
    throw DomainError(std::string(name) + " must be positive");
  }
}

double lorentzian(double detuning_hz, double fwhm_hz) {
  const double x = 2.0 * detuning_hz / fwhm_hz;
  return 1.0 / (1.0 + x * x);
}

}  // namespace

void NVEnsembleParams::validate() const {
  require_positive(zero_field_splitting_hz, "zero_field_splitting_hz");
  require_positive(gyromagnetic_ratio_hz_per_t, "gyromagnetic_ratio_hz_per_t");
  if (!(bias_field_t >= 0.0)) throw DomainError("bias_field_t must be non-negative");
  require_positive(decay_time_s, "decay_time_s");
  require_positive(contrast, "contrast");
  if (contrast > 1.0) throw DomainError("contrast must not exceed 1");
  require_positive(photon_rate_hz, "photon_rate_hz");
  require_positive(collection_factor, "collection_factor");
  if (collection_factor > 1.0) throw DomainError("collection_factor must not exceed 1");
  require_positive(conversion_gain, "conversion_gain");
  require_positive(odmr_linewidth_hz, "odmr_linewidth_hz");
  (void)resonance_frequencies(*this);
}

ResonancePair resonance_frequencies(const NVEnsembleParams& params) {
  const double shift = params.gyromagnetic_ratio_hz_per_t * params.bias_field_t;
  const ResonancePair pair{params.zero_field_splitting_hz + shift,
                           params.zero_field_splitting_hz - shift};
  if (!(pair.plus_hz > 0.0) || !(pair.minus_hz > 0.0)) {
    throw DomainError("bias field pushes a resonance to a non-positive frequency");
  }
  return pair;
}

double rabi_frequency(double local_field_t, const NVEnsembleParams& params) {
  if (!(local_field_t >= 0.0)) throw DomainError("local field must be non-negative");
  return kTwoPi * params.gyromagnetic_ratio_hz_per_t * local_field_t;
}

SpinState rabi_population(double rabi_rad_per_s, double time_s, double decay_time_s) {
  if (!(time_s >= 0.0)) throw DomainError("time must be non-negative");
  if (!(decay_time_s > 0.0)) throw DomainError("decay time must be positive");
  // exp(-t/inf) is exactly 1, which keeps the undamped case bit-identical.
  const double envelope = std::exp(-time_s / decay_time_s);
  return SpinState{0.5 * (1.0 + envelope * std::cos(rabi_rad_per_s * time_s))};
}

double odmr_contrast(double probe_frequency_hz, const NVEnsembleParams& params) {
  if (!(probe_frequency_hz > 0.0)) throw DomainError("probe frequency must be positive");
  const auto lines = resonance_frequencies(params);
  const double upper = lorentzian(probe_frequency_hz - lines.plus_hz, params.odmr_linewidth_hz);
  const double lower = lorentzian(probe_frequency_hz - lines.minus_hz, params.odmr_linewidth_hz);
  // Independent dips; the complement product keeps a degenerate pair at depth C.
  return params.contrast * (1.0 - (1.0 - upper) * (1.0 - lower));
}

}  // namespace nvr
