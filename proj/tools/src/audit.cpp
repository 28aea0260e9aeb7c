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

#include "timesym_app/audit.hpp"

#include <cmath>
#include <random>

#include "timesym/langevin.hpp"
#include "timesym/lindblad.hpp"
#include "timesym/pauli.hpp"
#include "timesym/phase_space.hpp"

namespace timesym::app {

namespace {

constexpr double kReversalLimit = 1e-5;
constexpr double kSemigroupLimit = 1e-10;
constexpr double kGeneratorLimit = 1e-10;
constexpr double kDissipationFloor = 1e-3;
constexpr double kGleReflectionLimit = 1e-4;
constexpr int kSemigroupPairs = 20;

MarkovModel default_markov() {
  MarkovModel m;
  m.system = SystemSpec{1.0, HarmonicPotential{1.0}};
  m.gamma = 1.0;
  m.q0 = 0.5;
  m.p0 = 1.0;
  return m;
}

BathModel default_gle() {
  BathModel m;
  m.system = SystemSpec{1.0, HarmonicPotential{1.0}};
  m.bath = discretize_ohmic(BathSpec::ohmic({1.0, 1.0, 5.0}, 1.0), 64);
  m.q0 = 0.5;
  m.p0 = 0.3;
  return m;
}

WignerModel default_wigner(Dynamics dynamics) {
  WignerModel m;
  m.pde.mass = 1.0;
  m.pde.gamma = 1.0;
  m.pde.kT = 1.0;
  m.pde.mode = PdeMode::QuantumWigner;
  m.pde.t_final = 0.5;
  m.pde.dt = 0.005;
  m.pde.dynamics = dynamics;
  m.initial = GaussianState{0.4, 0.3, 0.5, 0.5, 0.0};
  return m;
}

std::optional<RateMatrix> rates_for(const LindbladModel& l) {
  try {
    return rates_from_lindblad(l.eig, l.table, l.hamiltonian, l.couplings, l.hbar);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DegenerateSpectrum) return std::nullopt;
    throw;
  }
}

}  // namespace

bool AuditReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

AuditPlan plan_audit(const RunConfig& cfg) {
  AuditPlan plan;
  plan.dynamics = cfg.dynamics;
  plan.seed = cfg.seed;
  plan.lindblad = builtin_two_level_damping();
  plan.markov = default_markov();
  plan.gle = default_gle();
  plan.wigner = default_wigner(cfg.dynamics);

  if (auto a = cfg.root().find("audit")) {
    a->allow_only({"translation_a", "phase_space"});
    plan.translation_a = a->number("translation_a", 0.0);
    plan.phase_space = a->boolean("phase_space", true);
  }
  const double a = plan.translation_a;
  const double steps = a / plan.markov_dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, std::abs(steps)))
    throw ConfigError("audit.translation_a", "must be a multiple of the audit step 1e-3");
  if (std::abs(a) > 0.5 * std::min(plan.markov_half_span, plan.gle_half_span))
    throw ConfigError("audit.translation_a", "must satisfy |a| <= 1.5");

  std::string source = "built-in two-level damping and default Langevin models";
  switch (cfg.scenario) {
    case Scenario::SymmetryAudit:
      if (cfg.has_parameters())
        throw ConfigError("parameters", "SymmetryAudit uses built-in models and takes no parameters");
      break;
    case Scenario::Lindblad:
      plan.lindblad = parse_lindblad_model(cfg.parameters(), {"rho0"});
      source = "Lindblad parameters";
      break;
    case Scenario::Pauli: {
      const Node p = cfg.parameters();
      const PauliModel pm = parse_pauli_model(p);
      if (p.has("lindblad")) plan.lindblad = parse_lindblad_model(p.at("lindblad"), {});
      plan.rates = pm.rates;
      source = "Pauli parameters";
      break;
    }
    case Scenario::MarkovLangevin:
      plan.markov = parse_markov_model(cfg.parameters());
      source = "MarkovLangevin parameters";
      break;
    case Scenario::GLE:
    case Scenario::ExactBath: {
      auto m = parse_bath_model(cfg.parameters(), {"noise", "compare_exact"});
      if (!m.bath.is_discrete())
        throw ConfigError("parameters.bath.modes", "the GLE reflection audit needs a finite bank");
      plan.gle = std::move(m);
      source = std::string(scenario_name(cfg.scenario)) + " parameters";
      break;
    }
    case Scenario::Wigner:
      plan.wigner = parse_wigner_model(cfg.parameters(), cfg.dynamics);
      source = "Wigner parameters";
      break;
    case Scenario::BrownianEntropy:
      break;
  }
  if (!plan.rates) plan.rates = rates_for(plan.lindblad);
  plan.model = source;
  return plan;
}

AuditReport execute_audit(const AuditPlan& plan) {
  AuditReport rep;
  rep.model = plan.model;
  rep.dynamics = plan.dynamics;
  rep.translation_a = plan.translation_a;
  const bool symmetric = plan.dynamics == Dynamics::TimeSymmetric;
  auto below = [&](std::string name, double defect, double threshold, std::string detail = {}) {
    rep.checks.push_back({std::move(name), defect, threshold, defect <= threshold, std::move(detail)});
  };

  // Reflected Markovian trajectory.
  {
    const auto& m = plan.markov;
    const auto grid = TimeGrid::symmetric(plan.markov_dt, plan.markov_half_span);
    const auto traj = integrate_markovian(m.system, m.gamma_m(), std::monostate{}, m.q0, m.p0,
                                          grid, plan.dynamics);
    below("langevin.time_reversal_residual",
          check_time_reversal_residual(traj, m.system, m.gamma_m(), nullptr, plan.dynamics),
          kReversalLimit, "reflected noiseless trajectory");
  }

  // Same-sign pairs: both branches for the two-sided dynamics, forward only
  // for the standard equation.
  std::mt19937_64 rng(plan.seed);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  std::vector<std::pair<double, double>> pairs;
  for (int k = 0; k < kSemigroupPairs; ++k) {
    const double s = symmetric && k % 2 == 1 ? -1.0 : 1.0;
    const double t1 = u(rng);
    const double t2 = u(rng);
    pairs.emplace_back(s * t1, s * t2);
  }
  const std::string branch = symmetric ? "both branches" : "forward branch";
  const auto& g = plan.lindblad.generator;
  const auto semi = check_two_sided_semigroup(g, pairs, plan.dynamics);
  below("lindblad.same_sign_semigroup", semi.same_sign_defect, kSemigroupLimit,
        std::to_string(semi.same_sign_pairs) + " pairs, " + branch);
  if (plan.rates)
    below("pauli.same_sign_semigroup", population_semigroup_defect(*plan.rates, pairs),
          kSemigroupLimit, std::to_string(pairs.size()) + " pairs, " + branch);

  below("lindblad.generator_time_reversal",
        check_generator_time_reversal(g, TimeReversalConvention{}, plan.dynamics),
        kGeneratorLimit, "Theta L Theta^-1 against the expected parity of each part");

  {
    const auto mixed = check_two_sided_semigroup(g, {{1.0, -1.0}}, plan.dynamics);
    rep.checks.push_back({"lindblad.backward_dissipation", mixed.mixed_sign_defect,
                          kDissipationFloor, mixed.mixed_sign_defect >= kDissipationFloor,
                          "||E(-1) E(1) - I|| must stay above the threshold"});
  }

  {
    const auto& m = plan.markov;
    const auto tr = check_time_translation_breaking(m.system, m.gamma_m(), plan.translation_a,
                                                    m.q0, m.p0, plan.markov_half_span,
                                                    plan.markov_dt);
    rep.checks.push_back({"langevin.translation_symmetry.markov", tr.residual_at_a,
                          10.0 * tr.residual_at_origin, !tr.broken,
                          tr.broken ? "breaking confirmed" : "no breaking"});
  }
  {
    const auto& m = plan.gle;
    const FullState init{m.q0, m.p0, sample_thermal_state(m.bath, plan.seed)};
    const double r = gle_reflection_residual(m.system, m.bath, init, plan.translation_a,
                                             plan.gle_half_span, plan.gle_dt);
    below("langevin.translation_symmetry.gle", r, kGleReflectionLimit,
          r <= kGleReflectionLimit ? "no breaking" : "breaking confirmed");
  }

  if (plan.phase_space) {
    const auto& w = plan.wigner;
    const auto r = check_phase_space_time_reversal(w.initial, w.x_max, w.p_max, w.nx, w.np, w.pde);
    rep.checks.push_back({"phase_space.time_reversal", r.defect, 2.0 * r.discretization_estimate,
                          r.passed, "L1 defect against twice the refinement gap"});
  }
  return rep;
}

Json to_json(const AuditReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return Json{{"model", r.model},
              {"dynamics", r.dynamics == Dynamics::TimeSymmetric ? "time_symmetric" : "standard"},
              {"translation_a", r.translation_a},
              {"all_passed", r.passed()},
              {"checks", std::move(checks)}};
}

}  // namespace timesym::app
