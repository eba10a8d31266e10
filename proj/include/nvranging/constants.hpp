#pragma once

#include <numbers>

namespace nvr {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Display conversions used at the CLI boundary and in tests.
inline constexpr double kTeslaPerGauss = 1e-4;
inline constexpr double kTeslaPerNanotesla = 1e-9;

}  // namespace nvr
