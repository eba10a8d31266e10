#include "nvranging/noise_stats.hpp"

#include <cmath>
#include <cstddef>

#include "nvranging/errors.hpp"

namespace nvr {

void TimeSeries::validate() const {
  if (samples.size() < 2) throw DomainError("time series needs at least 2 samples");
  if (!(sample_interval_s > 0.0)) throw DomainError("sample interval must be positive");
}

namespace {

// Exact integer m with m * dt == tau up to rounding, or 0.
std::size_t samples_per_tau(double tau_s, double dt_s) {
  if (!(tau_s > 0.0)) return 0;
  const double ratio = tau_s / dt_s;
  const double m = std::round(ratio);
  if (m < 1.0 || std::abs(ratio - m) > 1e-9 * m) return 0;
  return static_cast<std::size_t>(m);
}

}  // namespace

double normalized_std(const TimeSeries& series, double averaging_time_s) {
  series.validate();
  if (!(averaging_time_s >= series.sample_interval_s * (1.0 - 1e-12))) {
    throw DomainError("averaging time shorter than the sample interval");
  }
  const auto m = static_cast<std::size_t>(std::floor(averaging_time_s / series.sample_interval_s + 1e-9));
  const std::size_t windows = series.samples.size() / m;
  if (windows < 2) throw DomainError("fewer than 2 complete averaging windows");

  std::vector<double> means(windows);
  for (std::size_t w = 0; w < windows; ++w) {
    long double sum = 0.0L;
    for (std::size_t i = 0; i < m; ++i) sum += series.samples[w * m + i];
    means[w] = static_cast<double>(sum / static_cast<long double>(m));
  }
  long double mean = 0.0L;
  for (double v : means) mean += v;
  mean /= static_cast<long double>(windows);
  long double var = 0.0L;
  for (double v : means) var += (v - mean) * (v - mean);
  return static_cast<double>(std::sqrt(var / static_cast<long double>(windows)));
}

std::vector<AllanPoint> allan_deviation(const TimeSeries& series, std::span<const double> taus_s) {
  series.validate();
  const auto& x = series.samples;
  const std::size_t n = x.size();

  // Prefix sums remove the per-tau window cost; the first sample is
  // subtracted so that a large constant offset does not eat precision.
  std::vector<long double> prefix(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + (static_cast<long double>(x[i]) - x[0]);

  std::vector<AllanPoint> out;
  out.reserve(taus_s.size());
  for (double tau : taus_s) {
    const std::size_t m = samples_per_tau(tau, series.sample_interval_s);
    if (m == 0) {
      out.push_back({tau, std::nullopt, "tau is not a positive integer multiple of the sample interval"});
      continue;
    }
    if (2 * m > n) {
      out.push_back({tau, std::nullopt, "tau too long for the series"});
      continue;
    }
    const std::size_t terms = n - 2 * m + 1;
    long double acc = 0.0L;
    for (std::size_t i = 0; i < terms; ++i) {
      // m * (ybar_{i+m} - ybar_i)
      const long double d = prefix[i + 2 * m] - 2.0L * prefix[i + m] + prefix[i];
      acc += d * d;
    }
    const long double md = static_cast<long double>(m);
    const long double var = acc / (md * md) / (2.0L * static_cast<long double>(terms));
    out.push_back({tau, static_cast<double>(std::sqrt(var)), {}});
  }
  return out;
}

std::vector<double> default_allan_taus(const TimeSeries& series) {
  series.validate();
  std::vector<double> taus;
  const std::size_t limit = series.samples.size() / 2;
  for (std::size_t decade = 1; decade <= limit; decade *= 10) {
    for (std::size_t step : {1u, 2u, 5u}) {
      const std::size_t m = decade * step;
      if (m > limit) return taus;
      taus.push_back(static_cast<double>(m) * series.sample_interval_s);
    }
  }
  return taus;
}

std::vector<RangingDeviationPoint> ranging_deviation(std::span<const AllanPoint> allan, double response_per_m) {
  if (!(response_per_m > 0.0)) throw DomainError("response must be positive");
  std::vector<RangingDeviationPoint> out;
  out.reserve(allan.size());
  for (const auto& a : allan) {
    out.push_back({a.tau_s, a.deviation ? std::optional<double>(*a.deviation / response_per_m) : std::nullopt});
  }
  return out;
}

}  // namespace nvr
