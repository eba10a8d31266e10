#pragma once

// Independent reference computations for the tests. These restate the model
// in closed form and use brute force (dense grids, plain loops) so they share
// no code path with the library.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double c = 299'792'458.0;
inline constexpr double pi = std::numbers::pi;

// Reference setup.
inline constexpr double D = 2.87e9;
inline constexpr double gamma = 2.8e10;  // Hz/T
inline constexpr double k = 7.6e3;
inline constexpr double B1 = 39e-9;
inline constexpr double tau = 460e-9;
inline constexpr double carrier = 2.885e9;
inline constexpr double t_det = 1100e-9;

inline double wavelength() { return c / carrier; }

/// Normalized fluorescence of an N-pi scan at distance L, written straight
/// from the closed forms: Omega t = N pi |cos(phi/2)|.
inline double scan_signal(double L, int N, double contrast, double decay = tau) {
  const double t_rf = N / (4.0 * k * gamma * B1);
  const double phi = 4.0 * pi * L / wavelength();
  const double u = std::abs(std::cos(phi / 2.0));
  const double rho = 0.5 * (1.0 + std::exp(-t_rf / decay) * std::cos(N * pi * u));
  return 1.0 - contrast * (1.0 - rho);
}

/// max |dS/dL| on a fine grid over one period, by forward differences.
inline double max_slope(int N, double contrast, double decay = tau, std::size_t samples = 400'000) {
  const double period = wavelength() / 2.0;
  const double h = period / static_cast<double>(samples);
  double best = 0.0;
  double prev = scan_signal(0.0, N, contrast, decay);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double cur = scan_signal(h * static_cast<double>(i), N, contrast, decay);
    best = std::max(best, std::abs(cur - prev) / h);
    prev = cur;
  }
  return best;
}

/// Normalized signal versus free-space field at fixed t_RF (reference-only drive).
inline double field_signal(double B_rf, double t_rf, double contrast, double gain = k) {
  const double omega = 2.0 * pi * gamma * gain * B_rf;
  return 1.0 - contrast * 0.5 * (1.0 - std::exp(-t_rf / tau) * std::cos(omega * t_rf));
}

/// Largest |dS/dB| over a dense field grid spanning one Rabi period.
inline double max_field_slope(double t_rf, double contrast, double gain = k) {
  const double period_field = 1.0 / (gamma * gain * t_rf);
  const std::size_t n = 200'000;
  const double h = period_field / static_cast<double>(n);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double b = h * static_cast<double>(i);
    best = std::max(best, std::abs(field_signal(b + h, t_rf, contrast, gain) - field_signal(b, t_rf, contrast, gain)) / h);
  }
  return best;
}

/// Sensitivity-versus-t_RF shape with unit constants.
inline double sensitivity_shape(double t, double detection, double decay) {
  return std::sqrt(1.0 + t / detection) / (t * std::exp(-t / decay));
}

/// Grid search for the argmin at a fixed resolution.
inline double grid_argmin(double detection, double decay, double step) {
  double best_t = step, best = sensitivity_shape(step, detection, decay);
  for (double t = step; t <= 10.0 * decay; t += step) {
    const double v = sensitivity_shape(t, detection, decay);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  return best_t;
}

/// Counts local extrema of a sampled curve.
inline int count_extrema(const std::vector<double>& v) {
  int n = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double a = v[i] - v[i - 1], b = v[i + 1] - v[i];
    if ((a > 0 && b < 0) || (a < 0 && b > 0)) ++n;
  }
  return n;
}

/// Least-squares slope of y on x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

/// Overlapping Allan deviation by the definition, with explicit window means.
inline double allan_direct(const std::vector<double>& x, std::size_t m) {
  const std::size_t M = x.size();
  std::vector<double> ybar(M - m + 1);
  for (std::size_t i = 0; i + m <= M; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < m; ++j) s += x[i + j];
    ybar[i] = s / static_cast<double>(m);
  }
  double acc = 0;
  const std::size_t terms = M - 2 * m + 1;
  for (std::size_t i = 0; i < terms; ++i) acc += (ybar[i + m] - ybar[i]) * (ybar[i + m] - ybar[i]);
  return std::sqrt(acc / (2.0 * static_cast<double>(terms)));
}

}  // namespace oracle
