#pragma once

#include <cstdint>
#include <limits>

namespace nvr {

/// SplitMix64: a counter-style 64-bit generator. The state is a Weyl counter
/// and each output is a bijective mix of it, so any stream can be addressed
/// by its seed alone. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) noexcept : counter_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    counter_ += kGolden;
    return mix(counter_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

 private:
  std::uint64_t counter_;
};

/// Seed of the index-th independent stream below a parent seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return seed ^ SplitMix64::mix((index + 1) * SplitMix64::kGolden);
}

}  // namespace nvr
