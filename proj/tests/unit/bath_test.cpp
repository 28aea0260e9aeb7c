// Copyright 2026 The timesym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "timesym/bath.hpp"
#include "timesym/quadrature.hpp"

using namespace timesym;
using timesym::testing::Gen;
using timesym::testing::case_seed;

namespace {

constexpr double kPi = std::numbers::pi;

BathSpec unit_oscillator(double kT = 1.0) {
  return BathSpec::discrete({Oscillator{1.0, 1.0, 1.0}}, kT);
}

}  // namespace

TEST_SUITE("bath") {

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(BathSpec::discrete({}, 1.0), Error);
  CHECK_THROWS_AS(BathSpec::discrete({Oscillator{-1.0, 1.0, 1.0}}, 1.0), Error);
  CHECK_THROWS_AS(BathSpec::discrete({Oscillator{1.0, 0.0, 1.0}}, 1.0), Error);
  CHECK_THROWS_AS(BathSpec::ohmic({1.0, 1.0, 0.0}, 1.0), Error);
  CHECK_THROWS_AS(BathSpec::ohmic({1.0, 1.0, INFINITY}, 1.0), Error);
  CHECK_THROWS_AS(BathSpec::ohmic({0.0, 1.0, 10.0}, 1.0), Error);
  CHECK_THROWS_AS(unit_oscillator().density(), Error);
  try {
    (void)BathSpec::ohmic({1.0, 1.0, 10.0}, 1.0).oscillators();
    FAIL("expected ContinuumBath");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ContinuumBath);
  }
  CHECK_THROWS_AS(NoisePath({0.0, 0.0}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(NoisePath({0.0, 1.0}, {1.0, NAN}), Error);
}

TEST_CASE("single oscillator kernel") {
  const auto spec = unit_oscillator();
  CHECK(memory_kernel(spec, 0.0) == doctest::Approx(1.0));
  CHECK(memory_kernel(spec, kPi) == doctest::Approx(-1.0));
  CHECK(memory_kernel(spec, 2.1) == doctest::Approx(oracle::kernel_sum({Oscillator{1.0, 1.0, 1.0}}, 2.1)));
}

TEST_CASE("Ohmic kernel integrates to M gamma") {
  const auto spec = BathSpec::ohmic({1.0, 1.0, 100.0}, 1.0);
  const double t_max = 10.0;  // Lambda T = 1e3
  const double head = quad::integrate_oscillatory(
      [&](double t) { return memory_kernel(spec, t); }, 0.0, t_max, 100.0, 1e-12);
  // Leading asymptotic tail of (2 M gamma / pi) sin(L t) / t beyond T.
  const double tail = 2.0 / kPi * std::cos(100.0 * t_max) / (100.0 * t_max);
  CHECK(std::abs(head + tail - 1.0) < 1e-3);
  CHECK(std::abs(kernel_integral(spec, t_max) - head) < 1e-9);
}

TEST_CASE("dissipation constant") {
  CHECK(dissipation_constant(BathSpec::ohmic({0.5, 2.0, 10.0}, 1.0)) == doctest::Approx(1.0));
  CHECK(dissipation_constant(BathSpec::ohmic({1.0, 1.0, 10.0}, 1.0)) == doctest::Approx(1.0));
  Gen gen(7);
  const auto bank = BathSpec::discrete(gen.oscillators(3), 1.0);
  try {
    (void)dissipation_constant(bank);
    FAIL("expected NonIntegrableKernel");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegrableKernel);
  }
}

TEST_CASE("classical autocorrelation of one oscillator") {
  CHECK(autocorrelation(unit_oscillator(1.0), 0.0) == doctest::Approx(2.0));
  CHECK(autocorrelation(unit_oscillator(1.0), 0.7) == doctest::Approx(2.0 * std::cos(0.7)));
}

TEST_CASE("quantum autocorrelation of a bank against the coth sum") {
  Gen gen(11);
  const auto bank = gen.oscillators(6);
  const auto spec = BathSpec::discrete(bank, 0.4, Statistics::Quantum, 1.3);
  for (double dt : {0.0, 0.3, -1.7, 4.0}) {
    CHECK(autocorrelation(spec, dt) ==
          doctest::Approx(oracle::quantum_autocorrelation(bank, 0.4, 1.3, dt)).epsilon(1e-12));
  }
}

TEST_CASE("high-temperature quantum Ohmic correlation integrates to 2 gamma M kT") {
  const double lambda = 10.0, kT = 1e3;
  const auto spec = BathSpec::ohmic({1.0, 1.0, lambda}, kT, Statistics::Quantum, 1.0);
  const double t_max = 30.0;
  const int n = 6000;
  const double h = t_max / n;
  double acc = 0.5 * (autocorrelation(spec, 0.0) + autocorrelation(spec, t_max));
  for (int i = 1; i < n; ++i) acc += autocorrelation(spec, i * h);
  acc *= h;
  CHECK(std::abs(acc / (2.0 * kT) - 1.0) < 0.02);
}

TEST_CASE("quantum mode energy is hbar w coth(hbar w / 2kT) across the small-x range") {
  const auto spec = BathSpec::ohmic({1.0, 1.0, 10.0}, 0.5, Statistics::Quantum, 1.0);
  for (double x : {1e-6, 1e-3, 0.05, 0.1999, 0.2, 0.2001, 0.7, 3.0}) {
    const double w = 2.0 * 0.5 * x;  // hbar w / 2kT = x
    const long double ref = static_cast<long double>(w) / std::tanh(static_cast<long double>(x));
    CHECK(mode_energy_factor(spec, w) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-13));
  }
}

TEST_CASE("zero-temperature Ohmic correlation is the closed form") {
  const double lambda = 5.0;
  const auto spec = BathSpec::ohmic({0.7, 1.3, lambda}, 0.0, Statistics::Quantum, 1.0);
  for (double s : {0.1, 0.9, 3.3}) {
    // (2 M gamma hbar / pi) int_0^L w cos(w s) dw
    const double ref = 2.0 * 0.7 * 1.3 / kPi *
                       quad::integrate([&](double w) { return w * std::cos(w * s); }, 0, lambda);
    CHECK(autocorrelation(spec, s) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("discretized Ohmic kernel at the origin") {
  const auto cont = BathSpec::ohmic({1.0, 1.0, 50.0}, 1.0);
  const auto disc = discretize_ohmic(cont, 2000);
  const double target = 2.0 * 50.0 / kPi;
  CHECK(target == doctest::Approx(31.83).epsilon(1e-3));
  CHECK(std::abs(memory_kernel(disc, 0.0) / target - 1.0) < 1e-3);
  for (const auto& o : disc.oscillators()) CHECK(o.mass == 1.0);
}

TEST_CASE("discretized kernel recurs after 2 pi / dw") {
  const int n = 64;
  const auto disc = discretize_ohmic(BathSpec::ohmic({1.0, 1.0, 50.0}, 1.0), n);
  const double recurrence = 2.0 * kPi / (50.0 / n);
  for (double t : {0.0, 0.37, 1.9}) {
    const double a = memory_kernel(disc, t);
    const double b = memory_kernel(disc, t + recurrence);
    CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(memory_kernel(disc, 0.0))));
  }
}

TEST_CASE("noise sampling is deterministic and evaluates both time directions") {
  Gen gen(5);
  const auto spec = BathSpec::discrete(gen.oscillators(8), 0.8);
  std::vector<double> grid;
  for (int i = -50; i <= 50; ++i) grid.push_back(0.1 * i);
  const auto a = sample_noise(spec, grid, 42);
  const auto b = sample_noise(spec, grid, 42);
  CHECK(a.values() == b.values());
  CHECK(a.values() != sample_noise(spec, grid, 43).values());
  const auto state = sample_thermal_state(spec, 42);
  CHECK(a.values()[0] == doctest::Approx(stochastic_force(spec, state, -5.0)));
}

TEST_CASE("force integral is the antiderivative of the force") {
  Gen gen(9);
  const auto spec = BathSpec::discrete(gen.oscillators(5), 1.0);
  const auto state = sample_thermal_state(spec, 3);
  for (double t : {-2.5, 0.0, 0.4, 3.0}) {
    const double ref = quad::integrate([&](double s) { return stochastic_force(spec, state, s); },
                                       0.0, t);
    CHECK(stochastic_force_integral(spec, state, t) == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("thermal sampling variances, classical and quantum") {
  const Oscillator osc{2.0, 1.5, 0.3};
  for (auto stats : {Statistics::Classical, Statistics::Quantum}) {
    const auto spec = BathSpec::discrete({osc}, 0.5, stats, 1.0);
    const int n = 20000;
    double sq = 0.0, sp = 0.0;
    for (int s = 0; s < n; ++s) {
      const auto st = sample_thermal_state(spec, static_cast<std::uint64_t>(s));
      sq += st.q[0] * st.q[0];
      sp += st.p[0] * st.p[0];
    }
    const double x = 1.0 * osc.frequency / (2.0 * 0.5);
    const double scale = stats == Statistics::Quantum ? x / std::tanh(x) : 1.0;
    const double vq = 0.5 / (osc.mass * osc.frequency * osc.frequency) * scale;
    const double vp = osc.mass * 0.5 * scale;
    // Relative standard error of a Gaussian variance estimate is sqrt(2/n).
    const double tol = 4.0 * std::sqrt(2.0 / n);
    CHECK(std::abs(sq / n / vq - 1.0) < tol);
    CHECK(std::abs(sp / n / vp - 1.0) < tol);
  }
}

TEST_CASE("Monte-Carlo noise moments match the closed-form correlation") {
  Gen gen(21);
  const auto bank = gen.oscillators(6);
  const auto spec = BathSpec::discrete(bank, 0.7);
  std::vector<double> grid{0.0};
  std::vector<double> lags;
  for (int k = 0; k < 20; ++k) lags.push_back(gen.uniform(-4.0, 4.0));
  grid.insert(grid.end(), lags.begin(), lags.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const auto origin = std::find(grid.begin(), grid.end(), 0.0) - grid.begin();

  const int n = 10000;
  std::vector<double> sum(grid.size(), 0.0), prod(grid.size(), 0.0), prod2(grid.size(), 0.0);
  for (int s = 0; s < n; ++s) {
    const auto path = sample_noise(spec, grid, static_cast<std::uint64_t>(s));
    const auto& v = path.values();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = v[static_cast<std::size_t>(origin)] * v[i];
      sum[i] += v[i];
      prod[i] += x;
      prod2[i] += x * x;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    INFO("lag " << grid[i]);
    // <f(0) f(t)> is half the symmetrized correlation for c-numbers.
    const double target = 0.5 * oracle::classical_autocorrelation(bank, 0.7, grid[i]);
    const double mean = prod[i] / n;
    const double se = std::sqrt((prod2[i] / n - mean * mean) / n);
    CHECK(std::abs(mean - target) < 3.0 * se + 1e-12);
    const double sd_f = std::sqrt(oracle::classical_autocorrelation(bank, 0.7, 0.0) / 2.0);
    CHECK(std::abs(sum[i] / n) < 3.0 * sd_f / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("property: kernel and correlation are exactly even") {
  for (int c = 0; c < 1000; ++c) {
    Gen gen(case_seed(10, c));
    const bool discrete = gen.integer(0, 1) == 1;
    const auto spec = discrete
                          ? BathSpec::discrete(gen.oscillators(gen.integer(1, 12)), gen.uniform(0.1, 3))
                          : BathSpec::ohmic({gen.uniform(0.1, 2), gen.uniform(0.5, 2),
                                             gen.uniform(1, 200)},
                                            gen.uniform(0.1, 3));
    const double t = gen.uniform(-20.0, 20.0);
    CHECK(memory_kernel(spec, t) == memory_kernel(spec, -t));
    if (c % 10 == 0) CHECK(autocorrelation(spec, t) == autocorrelation(spec, -t));
  }
}

TEST_CASE("property: kernel of a random bank equals the direct cosine sum") {
  for (int c = 0; c < 200; ++c) {
    Gen gen(case_seed(11, c));
    const auto bank = gen.oscillators(gen.integer(1, 30));
    const auto spec = BathSpec::discrete(bank, 1.0);
    const double t = gen.uniform(-10.0, 10.0);
    CHECK(memory_kernel(spec, t) == doctest::Approx(oracle::kernel_sum(bank, t)).epsilon(1e-12));
  }
}

}  // TEST_SUITE
