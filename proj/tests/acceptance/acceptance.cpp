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


// Acceptance run: one PASS/FAIL line per criterion, each with the measured
// quantity and its wall time. Exit status is nonzero if any line fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "timesym/bath.hpp"
#include "timesym/brownian.hpp"
#include "timesym/langevin.hpp"
#include "timesym/lindblad.hpp"
#include "timesym/pauli.hpp"
#include "timesym/phase_space.hpp"
#include "timesym/quantum.hpp"

using namespace timesym;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int failures = 0;

void run(const char* id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = out.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s %s  %s: %s [%.2f s of %.0f s%s]\n", id, pass ? "PASS" : "FAIL", title,
              out.detail.c_str(), secs, budget_s, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

CMatrix random_coupling(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  RMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = n(rng);
  return (0.5 * (a + a.transpose())).cast<Complex>();
}

struct ThreeLevel {
  HermitianOperator h{CMatrix::Zero(1, 1)};
  std::vector<HermitianOperator> a;
  EigenoperatorSet eig;
  SpectralFunctionTable table{1};
  Superoperator g;
  RateMatrix w;
};

ThreeLevel three_level(std::uint64_t seed, double kT) {
  ThreeLevel s;
  CMatrix h = CMatrix::Zero(3, 3);
  h(1, 1) = 0.7;
  h(2, 2) = 1.9;
  s.h = HermitianOperator(h);
  s.a = {HermitianOperator(random_coupling(3, seed))};
  s.eig = eigenoperator_decompose(s.h, s.a);
  s.table = SpectralFunctionTable::thermal_bosonic(s.eig, 0.5, kT, 20.0);
  s.g = build_generator(s.eig, s.table, s.h);
  s.w = rates_from_lindblad(s.eig, s.table, s.h, s.a);
  return s;
}

Outcome entropy_shape() {
  const auto curve = entropy_curve(BrownianParams{}, TimeGrid::symmetric(0.01, 4.0));
  const auto& s = curve.samples;
  const std::size_t mid = s.size() / 2;
  double asym = 0.0;
  bool increasing = true;
  for (std::size_t i = 1; i <= mid; ++i) {
    asym = std::max(asym, std::abs(s[mid + i].entropy - s[mid - i].entropy));
    increasing = increasing && s[mid + i].entropy > s[mid + i - 1].entropy;
  }
  auto at = [&](double t) { return s[mid + static_cast<std::size_t>(std::lround(t / 0.01))].entropy; };
  const bool growth = at(4) > at(2) && at(2) > at(1);
  const double s0 = std::abs(s[mid].entropy);
  return {s0 <= 1e-9 && asym <= 1e-9 && increasing && growth,
          fmt("S(0)=%.1e", s0) + fmt(" max|S(t)-S(-t)|=%.1e", asym) +
              (increasing ? " increasing in |t|" : " NOT increasing") + fmt(" S(1)=%.4f", at(1)) +
              fmt(" S(2)=%.4f", at(2)) + fmt(" S(4)=%.4f", at(4))};
}

Outcome gle_exactness() {
  const auto bath = discretize_ohmic(BathSpec::ohmic({1.0, 1.0, 50.0}, 1.0), 64);
  const SystemSpec sys{1.0, HarmonicPotential{1.0}};
  const auto state = sample_thermal_state(bath, 7);
  const auto grid = TimeGrid::forward(1e-3, 5.0);
  const auto exact = integrate_exact(sys, bath, FullState{0.5, 0.3, state}, grid);
  const auto gle = integrate_gle(sys, bath, 0.5, 0.3, coupled_noise(bath, state, grid), grid);
  double err = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) err = std::max(err, std::abs(exact.Q[i] - gle.Q[i]));
  return {err < 1e-4, fmt("max|Q_gle - Q_exact| = %.2e (limit 1e-4)", err)};
}

Outcome two_sided_decay() {
  const auto traj = integrate_markovian(SystemSpec{}, 1.0, std::monostate{}, 0.0, 1.0,
                                        TimeGrid::symmetric(1e-3, 5.0));
  double err = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i)
    err = std::max(err, std::abs(std::abs(traj.P[i]) - std::exp(-std::abs(traj.t[i]))));
  return {err < 1e-6, fmt("max| |P(t)| - |P(0)|exp(-gamma|t|) | = %.2e (limit 1e-6)", err)};
}

Outcome reversal_residual() {
  const SystemSpec sys{1.0, HarmonicPotential{1.0}};
  const auto traj = integrate_markovian(sys, 1.0, std::monostate{}, 0.5, 1.0,
                                        TimeGrid::symmetric(1e-3, 5.0));
  const double sym = check_time_reversal_residual(traj, sys, 1.0, nullptr);
  const double ctl = check_time_reversal_residual(traj, sys, 1.0, nullptr, Dynamics::Standard);
  return {sym < 1e-5 && ctl >= 0.1,
          fmt("signed residual %.2e (limit 1e-5)", sym) + fmt(", standard residual %.3f (needs >= 0.1)", ctl)};
}

Outcome two_sided_semigroup() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  double lind_same = 0.0, lind_mixed = 1e300, pauli_same = 0.0, pauli_mixed = 1e300;
  for (int dim : {2, 3, 4}) {
    CMatrix h = CMatrix::Zero(dim, dim);
    for (int i = 1; i < dim; ++i) h(i, i) = h(i - 1, i - 1).real() + 0.6 + 0.3 * i;
    const HermitianOperator hs(h);
    const std::vector<HermitianOperator> a{HermitianOperator(random_coupling(dim, 100 + dim))};
    const auto eig = eigenoperator_decompose(hs, a);
    const auto table = SpectralFunctionTable::thermal_bosonic(eig, 0.5, 1.0, 20.0);
    const auto g = build_generator(eig, table, hs);
    const auto w = rates_from_lindblad(eig, table, hs, a);
    std::vector<std::pair<double, double>> pairs;
    for (int k = 0; k < 20; ++k) {
      const double s = k % 2 == 0 ? 1.0 : -1.0;
      pairs.emplace_back(s * u(rng), s * u(rng));
    }
    pairs.emplace_back(1.0, -1.0);
    const auto rep = check_two_sided_semigroup(g, pairs);
    lind_same = std::max(lind_same, rep.same_sign_defect);
    lind_mixed = std::min(lind_mixed, rep.mixed_sign_defect);
    pauli_same = std::max(pauli_same, population_semigroup_defect(w, pairs));
    // ||E(-t) E(t) - I|| on populations, column by column.
    double mixed = 0.0;
    for (int i = 0; i < dim; ++i) {
      const RVector e = RVector::Unit(dim, i);
      mixed += (evolve_populations(w, evolve_populations(w, e, 1.0), -1.0) - e).squaredNorm();
    }
    pauli_mixed = std::min(pauli_mixed, std::sqrt(mixed));
  }
  const bool pass = lind_same < 1e-10 && pauli_same < 1e-10 && lind_mixed >= 1e-3 && pauli_mixed >= 1e-3;
  return {pass, fmt("same-sign defect Lindblad %.1e", lind_same) + fmt(" Pauli %.1e (limit 1e-10)", pauli_same) +
                    fmt("; min ||E(-t)E(t)-I|| Lindblad %.3f", lind_mixed) + fmt(" Pauli %.3f (needs >= 1e-3)", pauli_mixed)};
}

Outcome gibbs_fixed_point() {
  const auto s = three_level(11, 1.0);
  const auto gibbs = gibbs_state(s.h.data(), 1.0);
  CVector top = CVector::Zero(3);
  top(2) = 1.0;
  const double fwd = trace_distance(propagate(s.g, DensityMatrix::pure(top), 60.0), gibbs);
  double drift = 0.0;
  for (double t : {-0.5, -5.0, -60.0})
    drift = std::max(drift, trace_distance(propagate(s.g, gibbs, t), gibbs));
  return {fwd < 1e-6 && drift < 1e-9,
          fmt("forward distance to Gibbs at t=60: %.1e (limit 1e-6)", fwd) +
              fmt(", backward drift %.1e (limit 1e-9)", drift)};
}

Outcome pauli_lindblad() {
  const auto s = three_level(11, 1.0);
  const RVector p0 = (RVector(3) << 0.1, 0.3, 0.6).finished();
  const PopulationVector pv(p0);
  double err = 0.0;
  for (double t : {-8.0, -3.0, -1.0, -0.4, -0.05, 0.05, 0.4, 1.0, 3.0, 8.0}) {
    const RVector lind = propagate(s.g, DensityMatrix::diagonal(p0), t).data().diagonal().real();
    err = std::max(err, (lind - propagate_populations(s.w, pv, t).values()).cwiseAbs().maxCoeff());
  }
  return {err < 1e-9, fmt("max population gap over 10 times, both signs: %.1e (limit 1e-9)", err)};
}

Outcome gamma_limit() {
  const double lambda = 100.0, kT = 1.0;
  const auto bath = BathSpec::ohmic({1.0, 1.0, lambda}, kT);
  const double target = 2.0 * kT;
  double worst = 0.0, worst_t = 0.0, odd = 0.0;
  for (int k = 0; k <= 4900; ++k) {
    const double t = 10.0 / lambda + k * 1e-3;  // |t| from 10/Lambda to 5
    const double g = gamma_coefficient(bath, t);
    const double rel = std::abs(g / target - 1.0);
    if (rel > worst) {
      worst = rel;
      worst_t = t;
    }
    odd = std::max(odd, std::abs(gamma_coefficient(bath, -t) + g));
  }
  return {worst < 0.02 && odd < 1e-8,
          fmt("max relative deviation from sgn(t) 2 gamma M kT = %.2f%%", 100 * worst) +
              fmt(" at Lambda|t| = %.1f (limit 2%%)", lambda * worst_t) + fmt("; oddness %.1e (limit 1e-8)", odd)};
}

Outcome phase_space_cross() {
  const BrownianParams bp;
  const auto g = PhaseSpaceGrid::gaussian(14.0, 10.0, 256, 256, bp.initial_state());
  double worst = 0.0, mass = 0.0;
  for (auto dir : {Direction::Forward, Direction::Backward}) {
    PdeParams p;
    p.t_final = 2.0;
    p.direction = dir;
    p.dt = 0.9 * max_stable_dt(g, p);
    const auto out = evolve(g, p);
    const auto m = moments(out);
    const auto ref = analytic_solution(bp, dir == Direction::Forward ? 2.0 : -2.0);
    worst = std::max({worst, std::abs(m.var_q / ref.var_q - 1), std::abs(m.var_p / ref.var_p - 1),
                      std::abs(m.cov_qp / ref.cov_qp - 1)});
    mass = std::max(mass, std::abs(out.total_mass() - 1.0));
  }
  return {worst < 0.01 && mass < 1e-6,
          fmt("max relative moment error at |t|=2: %.1e (limit 1e-2)", worst) +
              fmt(", mass error %.1e (limit 1e-6)", mass)};
}

Outcome translation_breaking() {
  const SystemSpec sys{1.0, HarmonicPotential{1.0}};
  const auto markov = check_time_translation_breaking(sys, 1.0, 1.0, 0.5, 1.0);
  const bool markov_ok = markov.residual_at_origin < 1e-5 && markov.residual_at_a >= 10 * markov.residual_at_origin;
  const auto bath = discretize_ohmic(BathSpec::ohmic({1.0, 1.0, 5.0}, 1.0), 64);
  const FullState init{0.5, 0.3, sample_thermal_state(bath, 3)};
  const double gle0 = gle_reflection_residual(sys, bath, init, 0.0, 3.0, 1e-3);
  const double gle1 = gle_reflection_residual(sys, bath, init, 1.0, 3.0, 1e-3);
  const bool gle_ok = gle0 < 1e-4 && gle1 < 1e-4;
  return {markov_ok && gle_ok,
          fmt("Markov residual a=0 %.1e", markov.residual_at_origin) +
              fmt(", a=1 %.3f", markov.residual_at_a) +
              fmt(" (ratio %.1e, needs >= 10)", markov.residual_at_a / markov.residual_at_origin) +
              fmt("; GLE a=0 %.1e", gle0) + fmt(", a=1 %.1e (limit 1e-4)", gle1)};
}

Outcome noise_statistics() {
  const auto bath =
      discretize_ohmic(BathSpec::ohmic({1.0, 1.0, 10.0}, 0.5, Statistics::Quantum, 1.0), 64);
  std::vector<double> grid{0.0};
  for (int j = 1; j <= 20; ++j) grid.push_back(0.15 * j);
  const int n = 10000;
  const std::size_t m = grid.size();
  std::vector<double> sum(m, 0.0), sum2(m, 0.0), prod(m, 0.0), prod2(m, 0.0);
  for (int r = 0; r < n; ++r) {
    const auto v = sample_noise(bath, grid, 2026 + static_cast<std::uint64_t>(r)).values();
    for (std::size_t i = 0; i < m; ++i) {
      const double x = v[0] * v[i];
      sum[i] += v[i];
      sum2[i] += v[i] * v[i];
      prod[i] += x;
      prod2[i] += x * x;
    }
  }
  double worst_mean = 0.0, worst_cov = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double mean = sum[i] / n;
    const double se_mean = std::sqrt((sum2[i] / n - mean * mean) / n);
    worst_mean = std::max(worst_mean, std::abs(mean) / se_mean);
    if (i == 0) continue;
    const double cov = prod[i] / n;
    const double se_cov = std::sqrt((prod2[i] / n - cov * cov) / n);
    const double target = 0.5 * autocorrelation(bath, grid[i]);
    worst_cov = std::max(worst_cov, std::abs(cov - target) / se_cov);
  }
  return {worst_mean < 3.0 && worst_cov < 3.0,
          fmt("worst mean deviation %.2f sigma", worst_mean) +
              fmt(", worst autocovariance deviation over 20 lags %.2f sigma (limit 3)", worst_cov)};
}

}  // namespace

int main() {
  run("AC1", "entropy curve shape", 1, entropy_shape);
  run("AC2", "GLE vs exact bath", 10, gle_exactness);
  run("AC3", "two-sided exponential decay", 1, two_sided_decay);
  run("AC4", "time-reversal residual", 5, reversal_residual);
  run("AC5", "two-sided semigroup", 5, two_sided_semigroup);
  run("AC6", "bidirectional Gibbs fixed point", 5, gibbs_fixed_point);
  run("AC7", "Pauli-Lindblad consistency", 5, pauli_lindblad);
  run("AC8", "Gamma(t) limit", 5, gamma_limit);
  run("AC9", "phase-space cross-validation", 60, phase_space_cross);
  run("AC10", "time-translation breaking", 10, translation_breaking);
  run("AC11", "noise statistics", 30, noise_statistics);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
