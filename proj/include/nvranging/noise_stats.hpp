#pragma once

// Statistics over uniformly sampled traces: binned standard deviation and the
// overlapping Allan deviation, plus conversion to ranging deviation.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nvr {

struct TimeSeries {
  std::vector<double> samples;
  double sample_interval_s = 1.0;

  void validate() const;
  double duration_s() const { return sample_interval_s * static_cast<double>(samples.size()); }
};

/// Population std of the means of consecutive non-overlapping windows.
/// Throws DomainError if fewer than 2 complete windows fit.
double normalized_std(const TimeSeries& series, double averaging_time_s);

struct AllanPoint {
  double tau_s;
  std::optional<double> deviation;  // empty when tau_s is invalid for the series
  std::string error;
};

/// Overlapping Allan deviation at each requested averaging time. A tau that is
/// not an integer multiple m of the sample interval, or with 2m > length, gets
/// an error entry; the rest are still computed.
std::vector<AllanPoint> allan_deviation(const TimeSeries& series, std::span<const double> taus_s);

/// 1, 2, 5 decade ladder of sample-interval multiples up to half the series length.
std::vector<double> default_allan_taus(const TimeSeries& series);

struct RangingDeviationPoint {
  double tau_s;
  std::optional<double> deviation_m;
};

/// sigma_L = sigma_I / (dI/dL), elementwise; invalid entries pass through empty.
std::vector<RangingDeviationPoint> ranging_deviation(std::span<const AllanPoint> allan, double response_per_m);

}  // namespace nvr
