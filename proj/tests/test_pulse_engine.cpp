#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "nvranging/constants.hpp"
#include "nvranging/errors.hpp"
#include "nvranging/pulse_engine.hpp"
#include "nvranging/rng.hpp"
#include "oracles.hpp"

using namespace nvr;

namespace {

std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

double dark_fringe(double lambda) { return lambda / 4.0 + 38.0 * lambda / 2.0; }

}  // namespace

TEST_CASE("N-pi pulse duration") {
  const double t1 = n_pi_duration(1, 39e-9, 7.6e3, 2.8e10);
  CHECK(t1 == doctest::Approx(30.1234e-9).epsilon(1e-5));
  CHECK(std::abs(t1 - 30e-9) / 30e-9 < 0.02);
  CHECK(n_pi_duration(4, 39e-9, 7.6e3, 2.8e10) == doctest::Approx(120.494e-9).epsilon(1e-5));
  CHECK(n_pi_duration(3, 39e-9, 2 * 7.6e3, 2.8e10) == doctest::Approx(0.5 * n_pi_duration(3, 39e-9, 7.6e3, 2.8e10)));

  // Omega t = N pi at the constructive point B_RF = 2 B1.
  NVEnsembleParams p;
  for (int n = 1; n <= 6; ++n) {
    const double t = n_pi_duration(n, 39e-9, p.conversion_gain, p.gyromagnetic_ratio_hz_per_t);
    CHECK(rabi_frequency(local_field(78e-9, p.conversion_gain), p) * t == doctest::Approx(n * kPi));
  }
  CHECK_THROWS_AS(n_pi_duration(0, 39e-9, 7.6e3, 2.8e10), DomainError);
  CHECK_THROWS_AS(n_pi_duration(1, 0.0, 7.6e3, 2.8e10), DomainError);
  CHECK_THROWS_AS(n_pi_duration(1, 39e-9, -1.0, 2.8e10), DomainError);
}

TEST_CASE("expected fluorescence levels") {
  NVEnsembleParams p;
  const double bright = p.photon_rate_hz * p.collection_factor * 550e-9;
  CHECK(expected_fluorescence(SpinState{1.0}, p, 550e-9) == doctest::Approx(bright));
  p.contrast = 0.05;
  CHECK(expected_fluorescence(SpinState{0.0}, p, 550e-9) == doctest::Approx(0.95 * bright));
}

TEST_CASE("noise-free measurement reproduces the composed model") {
  NVEnsembleParams p;
  RangingGeometry g;
  PulseSequence s;
  s.n_pi = 1;
  const double lambda = g.wavelength_m();

  g.target_distance_m = 19.0 * lambda / 2.0;  // phi = 2 pi * 38: constructive
  auto rec = simulate_measurement(p, g, s, 1, Sampling::kNoiseFree);
  const double rho = 0.5 * (1.0 - std::exp(-n_pi_duration(1, 39e-9, 7.6e3, 2.8e10) / 460e-9));
  CHECK(rec.normalized_signal == doctest::Approx(1.0 - p.contrast * (1.0 - rho)).epsilon(1e-9));
  CHECK(rho == doctest::Approx(0.0316).epsilon(0.01));

  // At phi = pi nothing drives the spin; only the decay envelope pulls rho
  // below 1, and it vanishes for tau -> infinity.
  g.target_distance_m = dark_fringe(lambda);
  for (int n = 1; n <= 8; ++n) {
    s.n_pi = n;
    const double t = n_pi_duration(n, 39e-9, p.conversion_gain, p.gyromagnetic_ratio_hz_per_t);
    CHECK(simulate_measurement(p, g, s, 1, Sampling::kNoiseFree).normalized_signal ==
          doctest::Approx(1.0 - 0.5 * p.contrast * (1.0 - std::exp(-t / p.decay_time_s))).epsilon(1e-12));
    NVEnsembleParams undamped = p;
    undamped.decay_time_s = std::numeric_limits<double>::infinity();
    CHECK(simulate_measurement(undamped, g, s, 1, Sampling::kNoiseFree).normalized_signal == 1.0);
  }
}

TEST_CASE("no RF drive leaves the signal at the bright level") {
  NVEnsembleParams p;
  RangingGeometry g;
  g.reference_amplitude_t = g.signal_amplitude_t = 0.0;
  PulseSequence s;
  s.n_pi = 0;
  s.rf_duration_s = 100e-9;
  s.repeats = 100'000'000;
  p.decay_time_s = std::numeric_limits<double>::infinity();
  const auto rec = simulate_measurement(p, g, s, 99);
  CHECK(std::abs(rec.normalized_signal - 1.0) < 5.0 * std::sqrt(2.0 / rec.reference_counts));

  const auto flat = scan_distance(p, g, s, grid(1.0, 1.1, 50), 3, Sampling::kNoiseFree);
  for (const auto& pt : flat) CHECK(pt.normalized_signal == 1.0);

  // Finite decay: still flat, offset only by the envelope.
  p.decay_time_s = 460e-9;
  const auto damped = scan_distance(p, g, s, grid(1.0, 1.1, 50), 3, Sampling::kNoiseFree);
  for (const auto& pt : damped) CHECK(pt.normalized_signal == damped.front().normalized_signal);
  CHECK(damped.front().normalized_signal ==
        doctest::Approx(1.0 - 0.5 * p.contrast * (1.0 - std::exp(-100.0 / 460.0))));
}

TEST_CASE("determinism and order independence") {
  NVEnsembleParams p;
  RangingGeometry g;
  PulseSequence s;
  const auto a = simulate_measurement(p, g, s, 123456789);
  const auto b = simulate_measurement(p, g, s, 123456789);
  CHECK(a.reference_counts == b.reference_counts);
  CHECK(a.signal_counts == b.signal_counts);
  CHECK(a.rng_seed == 123456789);
  CHECK(simulate_measurement(p, g, s, 123456790).signal_counts != a.signal_counts);

  // Each scan point equals an isolated measurement on its derived stream,
  // whatever the evaluation order or threading inside scan_distance.
  const auto distances = grid(2.0, 2.1, 1500);
  const auto scan = scan_distance(p, g, s, distances, 42);
  for (std::size_t i : {std::size_t{0}, std::size_t{777}, std::size_t{1499}}) {
    RangingGeometry gi = g;
    gi.target_distance_m = distances[i];
    CHECK(scan[i].distance_m == distances[i]);
    CHECK(scan[i].normalized_signal == simulate_measurement(p, gi, s, stream_seed(42, i)).normalized_signal);
  }
  const auto again = scan_distance(p, g, s, distances, 42);
  for (std::size_t i = 0; i < scan.size(); ++i) CHECK(again[i].normalized_signal == scan[i].normalized_signal);
}

TEST_CASE("sampled counts match the expected mean within 3 standard errors") {
  NVEnsembleParams p;
  RangingGeometry g;
  PulseSequence s;
  s.repeats = 10'000;
  const double per_shot = expected_fluorescence(driven_population(p, g, s), p, s.readout_duration_s);
  double sum = 0.0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) sum += simulate_measurement(p, g, s, stream_seed(5, i)).signal_counts;
  const double shots = static_cast<double>(trials) * 1e4;
  const double se = std::sqrt(per_shot / shots);
  CHECK(std::abs(sum / shots - per_shot) < 3.0 * se);

  // Small totals go through the exact Poisson branch.
  s.repeats = 50;
  sum = 0.0;
  double sumsq = 0.0;
  const int small_trials = 4000;
  for (int i = 0; i < small_trials; ++i) {
    const double c = simulate_measurement(p, g, s, stream_seed(6, i)).signal_counts;
    CHECK(c == std::floor(c));
    sum += c;
    sumsq += c * c;
  }
  const double mean = sum / small_trials, var = sumsq / small_trials - mean * mean;
  const double expect = 50.0 * per_shot;
  CHECK(std::abs(mean - expect) < 3.0 * std::sqrt(expect / small_trials));
  CHECK(var == doctest::Approx(expect).epsilon(0.1));
}

TEST_CASE("shot-noise std of the normalized signal scales as repeats^-1/2") {
  NVEnsembleParams p;
  RangingGeometry g;
  PulseSequence s;
  std::vector<double> log_r, log_sd;
  for (double r : {1e3, 1e4, 1e5, 1e6}) {
    s.repeats = static_cast<std::uint64_t>(r);
    std::vector<double> v;
    for (int i = 0; i < 2000; ++i) v.push_back(simulate_measurement(p, g, s, stream_seed(77, i)).normalized_signal);
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    log_r.push_back(std::log(r));
    log_sd.push_back(0.5 * std::log(ss / v.size()));
  }
  const double slope = oracle::fit_slope(log_r, log_sd);
  CHECK(std::abs(slope + 0.5) < 0.025);
}

TEST_CASE("scan fringes multiply with N") {
  NVEnsembleParams p;
  RangingGeometry g;
  PulseSequence s;
  const double lambda = g.wavelength_m();
  const double start = dark_fringe(lambda) - lambda / 8.0;
  const auto distances = grid(start, start + lambda, 8001);

  auto extrema = [&](int n) {
    s.n_pi = n;
    std::vector<double> v;
    for (const auto& pt : scan_distance(p, g, s, distances, 0, Sampling::kNoiseFree)) v.push_back(pt.normalized_signal);
    return oracle::count_extrema(v);
  };
  const int e1 = extrema(1);
  CHECK(e1 == 4);  // two periods: one bright and one dark turning point each
  CHECK(extrema(4) == 4 * e1);

  // Over half a wavelength, N = 1 runs dark -> bright -> dark once.
  s.n_pi = 1;
  const double fringe_start = dark_fringe(lambda) - lambda / 4.0;
  const auto one = scan_distance(p, g, s, grid(fringe_start, fringe_start + lambda / 2.0, 1001), 0, Sampling::kNoiseFree);
  CHECK(one.front().normalized_signal == doctest::Approx(one.back().normalized_signal));
  for (const auto& pt : one) CHECK(pt.normalized_signal <= one[500].normalized_signal);
  CHECK(one[500].normalized_signal > 0.99);
  CHECK(one.front().normalized_signal < 0.9);
}

TEST_CASE("invalid inputs") {
  NVEnsembleParams p;
  RangingGeometry g;
  PulseSequence s;
  s.repeats = 0;
  CHECK_THROWS_AS(simulate_measurement(p, g, s, 1), DomainError);
  s = PulseSequence{};
  std::vector<double> empty;
  CHECK_THROWS_AS(scan_distance(p, g, s, empty, 1), DomainError);
  std::vector<double> negative{1.0, -0.5};
  CHECK_THROWS_AS(scan_distance(p, g, s, negative, 1), DomainError);
  g.target_distance_m = -1.0;
  CHECK_THROWS_AS(simulate_measurement(p, g, s, 1), DomainError);
}
