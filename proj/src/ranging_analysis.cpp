#include "nvranging/ranging_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "nvranging/constants.hpp"
#include "nvranging/errors.hpp"

namespace nvr {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw DomainError(std::string(name) + " must be positive");
}

void require_non_negative(double v, const char* name) {
  if (!(v >= 0.0)) throw DomainError(std::string(name) + " must be non-negative");
}

// Strict on at least one side so that flat plateaus are never features.
bool is_extremum(const std::vector<CurvePoint>& p, std::size_t j) {
  const double l = p[j - 1].value, c = p[j].value, r = p[j + 1].value;
  const bool peak = (c >= l && c > r) || (c > l && c >= r);
  const bool dip = (c <= l && c < r) || (c < l && c <= r);
  return peak || dip;
}

struct HalfCrossing {
  double distance_m;
};

// Walks from the extremum at j in direction step (+1/-1) over sign*value,
// which decreases away from the feature. Returns the half-maximum crossing.
HalfCrossing half_crossing(const std::vector<CurvePoint>& p, std::size_t j, int step, double sign) {
  const auto n = static_cast<std::ptrdiff_t>(p.size());
  auto val = [&](std::ptrdiff_t i) { return sign * p[static_cast<std::size_t>(i)].value; };

  std::ptrdiff_t k = static_cast<std::ptrdiff_t>(j);
  while (true) {
    const std::ptrdiff_t next = k + step;
    if (next < 0 || next >= n) throw UnboundedFeatureError("feature runs off the edge of the scan");
    if (!(val(next) < val(k))) break;
    k = next;
  }
  if (k == static_cast<std::ptrdiff_t>(j)) throw UnboundedFeatureError("feature has no width on the grid");

  const double half = 0.5 * (val(static_cast<std::ptrdiff_t>(j)) + val(k));
  for (std::ptrdiff_t m = static_cast<std::ptrdiff_t>(j) + step;; m += step) {
    if (val(m) <= half) {
      const auto& a = p[static_cast<std::size_t>(m - step)];
      const auto& b = p[static_cast<std::size_t>(m)];
      const double va = sign * a.value, vb = sign * b.value;
      const double frac = (va == vb) ? 0.0 : (va - half) / (va - vb);
      return HalfCrossing{a.distance_m + frac * (b.distance_m - a.distance_m)};
    }
  }
}

double quadrature_bias(const NVEnsembleParams& params, double rf_duration_s) {
  // Omega t = pi/2  <=>  2 pi gamma k B t = pi/2
  return 1.0 / (4.0 * params.gyromagnetic_ratio_hz_per_t * params.conversion_gain * rf_duration_s);
}

double normalized_signal_at_field(const NVEnsembleParams& params, double field_t, double rf_duration_s) {
  const double omega = rabi_frequency(local_field(field_t, params.conversion_gain), params);
  const SpinState s = rabi_population(omega, rf_duration_s, params.decay_time_s);
  return 1.0 - params.contrast * (1.0 - s.population_ms0);
}

}  // namespace

void ScanCurve::validate() const {
  if (points.size() < 3) throw DomainError("scan curve needs at least 3 points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].distance_m > points[i - 1].distance_m)) {
      throw DomainError("scan curve distances must be strictly increasing");
    }
  }
}

double dark_fringe_near(double distance_m, double wavelength_m) {
  require_positive(wavelength_m, "wavelength");
  const double half = 0.5 * wavelength_m;
  const double quarter = 0.25 * wavelength_m;
  const double order = std::max(1.0, std::round((distance_m - quarter) / half));
  return quarter + order * half;
}

ScanCurve noise_free_scan(const NVEnsembleParams& params, const RangingGeometry& geometry,
                          PulseSequence sequence, int n_pi, double center_m, double span_m,
                          std::size_t points) {
  if (points < 3) throw DomainError("scan needs at least 3 points");
  require_positive(span_m, "span");
  if (n_pi < 1) throw DomainError("N must be at least 1");
  sequence.n_pi = n_pi;

  std::vector<double> grid(points);
  const double start = center_m - 0.5 * span_m;
  const double step = span_m / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = start + step * static_cast<double>(i);

  const auto samples = scan_distance(params, geometry, sequence, grid, 0, Sampling::kNoiseFree);
  ScanCurve curve;
  curve.metadata = ScanMetadata{n_pi, sequence, geometry};
  curve.points.reserve(points);
  for (const auto& s : samples) curve.points.push_back({s.distance_m, s.normalized_signal});
  return curve;
}

ScanCurve noise_free_period(const NVEnsembleParams& params, const RangingGeometry& geometry, int n_pi) {
  const double lambda = geometry.wavelength_m();
  const double center = dark_fringe_near(geometry.target_distance_m, lambda);
  return noise_free_scan(params, geometry, PulseSequence{}, n_pi, center, 0.5 * lambda, 1001);
}

double fwhm_of_feature(const ScanCurve& curve, double center_hint_m) {
  curve.validate();
  const auto& p = curve.points;

  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j + 1 < p.size(); ++j) {
    if (!is_extremum(p, j)) continue;
    const double d = std::abs(p[j].distance_m - center_hint_m);
    if (d < best_distance) {
      best_distance = d;
      best = j;
    }
  }
  if (best == 0) throw UnboundedFeatureError("no interior extremum in scan");

  const double sign = (p[best].value >= p[best - 1].value && p[best].value >= p[best + 1].value) ? 1.0 : -1.0;
  const auto left = half_crossing(p, best, -1, sign);
  const auto right = half_crossing(p, best, +1, sign);
  return right.distance_m - left.distance_m;
}

ScanCurve smooth(const ScanCurve& curve, std::size_t window) {
  curve.validate();
  if (window < 1) throw DomainError("smoothing window must be at least 1");
  const auto& p = curve.points;
  const std::size_t half = window / 2;
  ScanCurve out{std::vector<CurvePoint>(p.size()), curve.metadata};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(p.size() - 1, i + half);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += p[j].value;
    out.points[i] = {p[i].distance_m, sum / static_cast<double>(hi - lo + 1)};
  }
  return out;
}

ScanCurve response_curve(const ScanCurve& curve) {
  curve.validate();
  const auto& p = curve.points;
  const std::size_t n = p.size();
  ScanCurve out{std::vector<CurvePoint>(n), curve.metadata};
  auto slope = [&](std::size_t a, std::size_t b) {
    return (p[b].value - p[a].value) / (p[b].distance_m - p[a].distance_m);
  };
  out.points[0] = {p[0].distance_m, slope(0, 1)};
  for (std::size_t i = 1; i + 1 < n; ++i) out.points[i] = {p[i].distance_m, slope(i - 1, i + 1)};
  out.points[n - 1] = {p[n - 1].distance_m, slope(n - 2, n - 1)};
  return out;
}

double max_abs_value(const ScanCurve& curve) {
  double m = 0.0;
  for (const auto& pt : curve.points) m = std::max(m, std::abs(pt.value));
  return m;
}

double response_ratio(int n_hi, int n_lo, const NVEnsembleParams& params, const RangingGeometry& geometry) {
  if (n_hi < 1 || n_lo < 1) throw DomainError("N must be at least 1");
  if (n_hi == n_lo) return 1.0;
  const double hi = max_abs_value(response_curve(noise_free_period(params, geometry, n_hi)));
  const double lo = max_abs_value(response_curve(noise_free_period(params, geometry, n_lo)));
  return hi / lo;
}

double field_response(const NVEnsembleParams& params, double rf_duration_s) {
  require_positive(rf_duration_s, "RF duration");
  const double bias = quadrature_bias(params, rf_duration_s);
  const double h = 1e-4 * bias;
  const double up = normalized_signal_at_field(params, bias + h, rf_duration_s);
  const double down = normalized_signal_at_field(params, bias - h, rf_duration_s);
  return std::abs(up - down) / (2.0 * h);
}

double calibrate_contrast(double target_response_per_t, const NVEnsembleParams& params, double rf_duration_s) {
  require_non_negative(target_response_per_t, "target response");
  require_positive(rf_duration_s, "RF duration");
  if (target_response_per_t == 0.0) return 0.0;

  NVEnsembleParams trial = params;
  auto residual = [&](double c) {
    trial.contrast = c;
    return field_response(trial, rf_duration_s) - target_response_per_t;
  };
  if (residual(1.0) < 0.0) throw UnreachableResponseError("target response needs contrast above 1");

  std::uintmax_t iterations = 200;
  const auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-9 * std::abs(a + b); };
  const auto [lo, hi] = boost::math::tools::toms748_solve(residual, 0.0, 1.0, -target_response_per_t,
                                                          residual(1.0), tol, iterations);
  return 0.5 * (lo + hi);
}

double field_sensitivity(double noise_sigma, double measurement_time_s, double response_per_t) {
  require_non_negative(noise_sigma, "noise sigma");
  require_positive(measurement_time_s, "measurement time");
  require_positive(response_per_t, "response");
  return noise_sigma * std::sqrt(measurement_time_s) / response_per_t;
}

double electric_sensitivity(double field_sensitivity_t) {
  require_non_negative(field_sensitivity_t, "field sensitivity");
  return kSpeedOfLight * field_sensitivity_t;
}

double sensitivity_formula(double rf_duration_s, double detection_time_s, double decay_time_s,
                           double gyromagnetic_ratio_hz_per_t, double conversion_gain, double contrast,
                           double photon_rate_hz) {
  require_non_negative(rf_duration_s, "RF duration");
  require_positive(detection_time_s, "detection time");
  require_positive(decay_time_s, "decay time");
  require_positive(gyromagnetic_ratio_hz_per_t, "gyromagnetic ratio");
  require_positive(conversion_gain, "conversion gain");
  require_positive(contrast, "contrast");
  require_positive(photon_rate_hz, "photon rate");
  if (rf_duration_s == 0.0) return std::numeric_limits<double>::infinity();

  const double prefactor =
      1.0 / (gyromagnetic_ratio_hz_per_t * conversion_gain * contrast * std::sqrt(photon_rate_hz));
  const double duty = std::sqrt(1.0 + rf_duration_s / detection_time_s);
  return prefactor * duty / (rf_duration_s * std::exp(-rf_duration_s / decay_time_s));
}

double optimal_rf_duration(double detection_time_s, double decay_time_s) {
  require_positive(detection_time_s, "detection time");
  require_positive(decay_time_s, "decay time");
  // Only the t_RF dependence matters; unit prefactors. Searched in units of
  // tau because brent's tolerance has an absolute part.
  auto shape = [&](double x) {
    return sensitivity_formula(x * decay_time_s, detection_time_s, decay_time_s, 1.0, 1.0, 1.0, 1.0);
  };
  std::uintmax_t iterations = 500;
  const auto [x_min, value] = boost::math::tools::brent_find_minima(shape, 1e-6, 10.0, 52, iterations);
  (void)value;
  return x_min * decay_time_s;
}

double ranging_accuracy(double noise_sigma, double response_per_m) {
  require_non_negative(noise_sigma, "noise sigma");
  require_positive(response_per_m, "response");
  return noise_sigma / response_per_m;
}

double phase_sensitivity(double distance_accuracy_m, double wavelength_m) {
  require_non_negative(distance_accuracy_m, "distance accuracy");
  require_positive(wavelength_m, "wavelength");
  return 4.0 * kPi * distance_accuracy_m / wavelength_m;
}

}  // namespace nvr
