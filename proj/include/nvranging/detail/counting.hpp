#pragma once

#include <algorithm>
#include <cmath>
#include <random>

namespace nvr {

// Above this mean the Poisson law is replaced by its normal limit.
inline constexpr double kNormalApproxMean = 1000.0;

template <typename Rng>
double draw_counts(double mean, Rng& rng) {
  if (!(mean > 0.0)) return 0.0;
  if (mean > kNormalApproxMean) {
    std::normal_distribution<double> normal(mean, std::sqrt(mean));
    return std::max(0.0, std::round(normal(rng)));
  }
  std::poisson_distribution<long long> poisson(mean);
  return static_cast<double>(poisson(rng));
}

}  // namespace nvr
