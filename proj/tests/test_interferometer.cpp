#include <doctest.h>

#include <cmath>
#include <random>

#include "nvranging/constants.hpp"
#include "nvranging/errors.hpp"
#include "nvranging/interferometer.hpp"

using namespace nvr;

TEST_CASE("phase from distance") {
  const double lambda = wavelength_from_frequency(2.885e9);
  CHECK(lambda == doctest::Approx(0.103913).epsilon(1e-5));
  CHECK(lambda * 2.885e9 == doctest::Approx(kSpeedOfLight).epsilon(1e-15));
  CHECK(phase_from_distance(0.0, lambda) == 0.0);
  CHECK(phase_from_distance(lambda / 4.0, lambda) == doctest::Approx(kPi));
  CHECK(phase_from_distance(lambda / 2.0, lambda) == doctest::Approx(kTwoPi));
  CHECK(phase_from_distance(2.0, lambda) > kTwoPi);  // left unreduced
  CHECK_THROWS_AS(phase_from_distance(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(wavelength_from_frequency(-1.0), DomainError);
}

TEST_CASE("phase is linear in distance") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  const double lambda = 0.103913;
  for (int i = 0; i < 500; ++i) {
    const double a = d(gen), b = d(gen);
    CHECK(phase_from_distance(a + b, lambda) ==
          doctest::Approx(phase_from_distance(a, lambda) + phase_from_distance(b, lambda)).epsilon(1e-13));
  }
}

TEST_CASE("interference amplitude examples") {
  CHECK(interference_amplitude(39e-9, 39e-9, 0.0) == doctest::Approx(78e-9).epsilon(1e-15));
  CHECK(interference_amplitude(39e-9, 39e-9, kPi) < 1e-23);
  CHECK(interference_amplitude(39e-9, 39e-9, kPi / 2.0) == doctest::Approx(55.154e-9).epsilon(1e-4));
  CHECK(interference_amplitude(39e-9, 0.0, 1.0) == doctest::Approx(39e-9));
  CHECK_THROWS_AS(interference_amplitude(-1e-9, 1e-9, 0.0), DomainError);
}

TEST_CASE("interference amplitude: periodic, even, bounded, reduces to 2B|cos(phi/2)|") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> amp(0.0, 1e-6), ph(-20.0, 20.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = amp(gen), b = amp(gen), phi = ph(gen);
    const double v = interference_amplitude(a, b, phi);
    CHECK(v == doctest::Approx(interference_amplitude(a, b, phi + kTwoPi)).epsilon(1e-9));
    CHECK(v == doctest::Approx(interference_amplitude(a, b, -phi)).epsilon(1e-12));
    CHECK(v >= std::abs(a - b) * (1 - 1e-12));
    CHECK(v <= (a + b) * (1 + 1e-12));
  }
  const double b = 39e-9;
  for (int i = 0; i <= 100000; ++i) {
    const double phi = -4.0 * kPi + 8.0 * kPi * i / 100000.0;
    const double expected = 2.0 * b * std::abs(std::cos(phi / 2.0));
    CHECK(std::abs(interference_amplitude(b, b, phi) - expected) < 1e-12 * b);
  }
}

TEST_CASE("local field") {
  CHECK(local_field(0.0, 7.6e3) == 0.0);
  CHECK(local_field(78e-9, 7.6e3) == doctest::Approx(0.5928e-3));
  CHECK(local_field(12.5e-9, 1.0) == 12.5e-9);
  CHECK_THROWS_AS(local_field(1e-9, 0.0), DomainError);
}
