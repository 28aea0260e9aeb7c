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
#include <vector>

#include <doctest.h>

#include "generators.hpp"
#include "timesym/bath.hpp"
#include "timesym/langevin.hpp"

using namespace timesym;
using timesym::testing::Gen;
using timesym::testing::case_seed;

namespace {

SystemSpec harmonic(double omega0, double mass = 1.0) {
  return SystemSpec{mass, HarmonicPotential{omega0}};
}

BathSpec ohmic_bank(int n, double cutoff, double kT = 1.0) {
  return discretize_ohmic(BathSpec::ohmic({1.0, 1.0, cutoff}, kT), n);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("langevin") {

TEST_CASE("time grids") {
  const auto g = TimeGrid::symmetric(0.1, 1.0);
  CHECK(g.size() == 21);
  CHECK(g.time(g.origin_index()) == 0.0);
  CHECK(g.time(0) == doctest::Approx(-1.0));
  CHECK(TimeGrid::forward(1e-3, 5.0).steps_forward == 5000);
  CHECK_THROWS_AS(TimeGrid::span(0.1, 0.5, 1.0), Error);
  CHECK_THROWS_AS(TimeGrid::forward(0.0, 1.0), Error);
}

TEST_CASE("trajectory validation") {
  TrajectorySeries s{{0.0, 1.0}, {0.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(s.validate(), Error);
  s.Q = {0.0, NAN};
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("uncoupled harmonic motion is exact") {
  std::vector<Oscillator> bank(4, Oscillator{1.3, 1.0, 0.0});
  const auto bath = BathSpec::discrete(bank, 1.0);
  FullState init{0.4, -0.7, {std::vector<double>(4, 0.1), std::vector<double>(4, 0.2)}};
  const double w0 = 1.7, m = 1.0;
  const auto traj = integrate_exact(harmonic(w0, m), bath, init, TimeGrid::symmetric(1e-3, 10.0));
  double err = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.t[i];
    const double q = 0.4 * std::cos(w0 * t) + -0.7 / (m * w0) * std::sin(w0 * t);
    err = std::max(err, std::abs(traj.Q[i] - q));
  }
  CHECK(err < 1e-8);
}

TEST_CASE("energy drift of the full Hamiltonian over t = 100") {
  const auto bath = ohmic_bank(64, 10.0);
  const auto sys = harmonic(1.0);
  FullState init{0.5, 0.3, sample_thermal_state(bath, 1)};
  const double e0 = total_energy(sys, bath, init);
  FullState s = init;
  double worst = 0.0;
  for (int k = 0; k < 100000; ++k) {
    s = exact_step(sys, bath, s, 1e-3);
    if (k % 1000 == 999) worst = std::max(worst, std::abs(total_energy(sys, bath, s) - e0));
  }
  CHECK(worst / std::abs(e0) < 1e-6);
}

TEST_CASE("momentum-flip round trip recovers the initial state") {
  const auto bath = ohmic_bank(32, 20.0);
  const auto sys = SystemSpec{1.0, QuarticPotential{-1.0, 0.5}};
  FullState s{0.2, 0.9, sample_thermal_state(bath, 8)};
  const FullState init = s;
  for (int k = 0; k < 3000; ++k) s = exact_step(sys, bath, s, 1e-3);
  s = momentum_flip(s);
  for (int k = 0; k < 3000; ++k) s = exact_step(sys, bath, s, 1e-3);
  s = momentum_flip(s);
  double d = std::abs(s.Q - init.Q) + std::abs(s.P - init.P);
  for (std::size_t k = 0; k < s.bath.q.size(); ++k)
    d = std::max(d, std::abs(s.bath.q[k] - init.bath.q[k]) + std::abs(s.bath.p[k] - init.bath.p[k]));
  CHECK(d < 1e-6);
}

TEST_CASE("GLE reproduces the exact dynamics of a small bank") {
  const auto bath = ohmic_bank(16, 20.0);
  const auto sys = harmonic(1.0);
  const auto state = sample_thermal_state(bath, 4);
  const auto grid = TimeGrid::symmetric(1e-3, 2.0);
  const auto exact = integrate_exact(sys, bath, FullState{0.5, 0.3, state}, grid);
  const auto gle = integrate_gle(sys, bath, 0.5, 0.3, coupled_noise(bath, state, grid), grid);
  CHECK(max_abs_diff(exact.Q, gle.Q) < 1e-4);
  CHECK(max_abs_diff(exact.P, gle.P) < 1e-3);
}

TEST_CASE("GLE with zero coupling is Hamiltonian motion") {
  const auto bath = BathSpec::discrete(std::vector<Oscillator>(3, Oscillator{2.0, 1.0, 0.0}), 1.0);
  const auto grid = TimeGrid::symmetric(1e-3, 3.0);
  const NoisePath zero(grid.times(), std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0));
  const auto gle = integrate_gle(harmonic(1.0), bath, 1.0, 0.0, zero, grid);
  for (std::size_t i = 0; i < gle.size(); i += 100) CHECK(gle.Q[i] == doctest::Approx(std::cos(gle.t[i])).epsilon(1e-5));
}

TEST_CASE("backward GLE is the mirrored forward run of the flipped state") {
  const auto bath = ohmic_bank(16, 20.0);
  const auto sys = harmonic(1.0);
  const auto state = sample_thermal_state(bath, 6);
  const auto back = TimeGrid::span(1e-3, -2.0, 0.0);
  const auto fwd = TimeGrid::forward(1e-3, 2.0);
  // Reversed bath: the force along the mirrored path is f(-t).
  BathState reversed = state;
  for (double& p : reversed.p) p = -p;
  const auto b = integrate_gle(sys, bath, 0.5, 0.3, coupled_noise(bath, state, back), back);
  const auto f = integrate_gle(sys, bath, 0.5, -0.3, coupled_noise(bath, reversed, fwd), fwd);
  double err = 0.0;
  const std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    err = std::max(err, std::abs(b.Q[n - 1 - i] - f.Q[i]));
    err = std::max(err, std::abs(b.P[n - 1 - i] + f.P[i]));
  }
  CHECK(err < 1e-9);
  // And against the exact oracle.
  const auto exact = integrate_exact(sys, bath, FullState{0.5, 0.3, state}, back);
  CHECK(max_abs_diff(exact.Q, b.Q) < 1e-4);
}

TEST_CASE("noiseless free particle decays as exp(-gamma |t|)") {
  const double gamma = 1.0;
  const auto traj = integrate_markovian(SystemSpec{}, gamma, std::monostate{}, 0.0, 1.0,
                                        TimeGrid::symmetric(1e-3, 5.0));
  double err = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    err = std::max(err, std::abs(traj.P[i] - std::exp(-gamma * std::abs(traj.t[i]))));
  CHECK(err < 1e-6);
  const auto std_traj = integrate_markovian(SystemSpec{}, gamma, std::monostate{}, 0.0, 1.0,
                                            TimeGrid::span(1e-3, -2.0, 0.0), Dynamics::Standard);
  CHECK(std_traj.P.front() == doctest::Approx(std::exp(2.0)).epsilon(1e-6));
}

TEST_CASE("white-noise ensemble thermalizes a harmonic oscillator") {
  const double kT = 0.8, m = 1.5, gamma = 1.0;
  const auto sys = harmonic(1.0, m);
  const auto grid = TimeGrid::forward(1e-2, 10.0);
  const int n = 10000;
  double p2 = 0.0;
  for (int s = 0; s < n; ++s) {
    const auto traj = integrate_markovian(sys, gamma * m, WhiteNoise{kT, static_cast<std::uint64_t>(s)},
                                          0.0, 0.0, grid);
    p2 += traj.P.back() * traj.P.back();
  }
  CHECK(std::abs(p2 / n / m / kT - 1.0) < 0.05);
}

TEST_CASE("markovian runs are bit-identical for equal seeds") {
  const auto grid = TimeGrid::symmetric(1e-2, 3.0);
  const auto a = integrate_markovian(harmonic(1.0), 1.0, WhiteNoise{1.0, 99}, 0.1, 0.2, grid);
  const auto b = integrate_markovian(harmonic(1.0), 1.0, WhiteNoise{1.0, 99}, 0.1, 0.2, grid);
  CHECK(a.Q == b.Q);
  CHECK(a.P == b.P);
  const auto c = integrate_markovian(harmonic(1.0), 1.0, WhiteNoise{1.0, 100}, 0.1, 0.2, grid);
  CHECK(a.Q != c.Q);
}

TEST_CASE("time-reversal residual separates the signed and standard equations") {
  const auto sys = harmonic(1.0);
  const auto grid = TimeGrid::symmetric(1e-3, 5.0);
  const auto traj = integrate_markovian(sys, 1.0, std::monostate{}, 0.5, 1.0, grid);
  CHECK(check_time_reversal_residual(traj, sys, 1.0, nullptr) < 1e-5);
  double p_max = 0.0;
  for (double p : traj.P) p_max = std::max(p_max, std::abs(p));
  const double control =
      check_time_reversal_residual(traj, sys, 1.0, nullptr, Dynamics::Standard);
  CHECK(control > 0.1);
  CHECK(control == doctest::Approx(2.0 * p_max).epsilon(0.05));
  CHECK_THROWS_AS(check_time_reversal_residual(
                      integrate_markovian(sys, 1.0, std::monostate{}, 0, 1,
                                          TimeGrid::span(1e-3, -1.0, 2.0)),
                      sys, 1.0, nullptr),
                  Error);
}

TEST_CASE("time-reversal residual holds along a fixed noise realization") {
  const auto sys = harmonic(1.0);
  const auto grid = TimeGrid::symmetric(1e-3, 2.0);
  // Smooth noise, odd-free: the reflected equation needs f(-t) on the grid.
  const auto bath = ohmic_bank(8, 3.0);
  const auto noise = sample_noise(bath, grid.times(), 17);
  const auto traj = integrate_markovian(sys, 1.0, noise, 0.5, 1.0, grid);
  CHECK(check_time_reversal_residual(traj, sys, 1.0, &noise) < 1e-5);
}

TEST_CASE("GLE trajectories reflect with a reversed bath") {
  const auto bath = ohmic_bank(32, 5.0);
  const auto sys = harmonic(1.0);
  const FullState init{0.5, 0.3, sample_thermal_state(bath, 3)};
  CHECK(gle_reflection_residual(sys, bath, init, 0.0, 3.0, 1e-3) < 1e-4);
  CHECK(gle_reflection_residual(sys, bath, init, 1.0, 3.0, 1e-3) < 1e-4);
  CHECK(gle_reflection_residual(sys, bath, init, -0.7, 3.0, 1e-3) < 1e-4);
  CHECK(gle_reflection_residual(sys, bath, init, 1.0, 3.0, 1e-3, false) > 0.1);
}

TEST_CASE("Markovian equation breaks translation symmetry") {
  const auto sys = harmonic(1.0);
  const auto at0 = check_time_translation_breaking(sys, 1.0, 0.0, 0.5, 1.0);
  CHECK(at0.residual_at_a < 1e-5);
  const auto at1 = check_time_translation_breaking(sys, 1.0, 1.0, 0.5, 1.0);
  CHECK(at1.broken);
  CHECK(at1.residual_at_a > 0.1);
  CHECK(at1.residual_at_origin < 1e-5);
}

TEST_CASE("Markovian limit of a sharp-cutoff Ohmic GLE") {
  const auto bath = BathSpec::ohmic({1.0, 1.0, 100.0}, 1.0);
  const auto grid = TimeGrid::symmetric(1e-3, 5.0);
  const NoisePath zero(grid.times(), std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0));
  const auto gle = integrate_gle(SystemSpec{}, bath, 0.0, 1.0, zero, grid);
  const auto mk = integrate_markovian(SystemSpec{}, 1.0, std::monostate{}, 0.0, 1.0, grid);
  double se = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < gle.size(); ++i) {
    if (std::abs(gle.t[i]) < 0.1) continue;  // 10 / Lambda
    se += (gle.P[i] - mk.P[i]) * (gle.P[i] - mk.P[i]);
    norm += mk.P[i] * mk.P[i];
  }
  CHECK(std::sqrt(se / norm) < 0.03);
}

TEST_CASE("property: GLE agrees with the exact bank for random banks") {
  for (int c = 0; c < 4; ++c) {
    Gen gen(case_seed(20, c));
    const auto bank = gen.oscillators(gen.integer(2, 24));
    const auto bath = BathSpec::discrete(bank, gen.uniform(0.2, 2.0));
    const auto sys = harmonic(gen.uniform(0.5, 2.0), gen.uniform(0.5, 2.0));
    const auto state = sample_thermal_state(bath, static_cast<std::uint64_t>(c));
    const auto grid = TimeGrid::symmetric(1e-3, 1.5);
    const double q0 = gen.uniform(-1, 1), p0 = gen.uniform(-1, 1);
    const auto exact = integrate_exact(sys, bath, FullState{q0, p0, state}, grid);
    const auto gle = integrate_gle(sys, bath, q0, p0, coupled_noise(bath, state, grid), grid);
    INFO("case " << c);
    CHECK(max_abs_diff(exact.Q, gle.Q) < 1e-4);
  }
}

TEST_CASE("property: noiseless signed trajectories are reflection symmetric") {
  for (int c = 0; c < 20; ++c) {
    Gen gen(case_seed(21, c));
    const auto sys = harmonic(gen.uniform(0.3, 2.0), gen.uniform(0.5, 2.0));
    const double gm = gen.uniform(0.1, 2.0);
    const auto traj = integrate_markovian(sys, gm, std::monostate{}, gen.uniform(-1, 1),
                                          gen.uniform(-1, 1), TimeGrid::symmetric(1e-3, 2.0));
    INFO("case " << c);
    CHECK(check_time_reversal_residual(traj, sys, gm, nullptr) < 1e-5);
  }
}

}  // TEST_SUITE
