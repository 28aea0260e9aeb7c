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

#include "timesym_app/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <variant>

#include "timesym/brownian.hpp"
#include "timesym/csv.hpp"
#include "timesym/langevin.hpp"
#include "timesym/lindblad.hpp"
#include "timesym/pauli.hpp"
#include "timesym/phase_space.hpp"
#include "timesym_app/audit.hpp"
#include "timesym_app/models.hpp"

namespace timesym::app {

bool ScenarioResult::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

namespace {

// Thresholds of the built-in checks.
constexpr double kEnergyDriftLimit = 1e-6;
constexpr double kGleExactLimit = 1e-4;
constexpr double kReversalLimit = 1e-5;
constexpr double kEntropyLimit = 1e-9;
constexpr double kTraceLimit = 1e-10;
constexpr double kSemigroupLimit = 1e-10;
constexpr double kGeneratorLimit = 1e-10;
constexpr double kMassLimit = 1e-5;  // includes outflow through the frame

CheckResult below(std::string name, double defect, double threshold, std::string detail = {}) {
  return {std::move(name), defect, threshold, defect <= threshold, std::move(detail)};
}

std::ofstream open_output(const RunContext& ctx, ScenarioResult& res, const std::string& name) {
  std::ofstream out(ctx.out_dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + (ctx.out_dir / name).string() + "'");
  res.outputs.push_back(name);
  return out;
}

std::string member_file(const std::string& stem, int member, int members) {
  return members == 1 ? stem + ".csv" : stem + "_" + std::to_string(member) + ".csv";
}

bool symmetric(const TimeGrid& g) { return g.steps_backward == g.steps_forward; }

void require_symmetric_dynamics(const RunConfig& cfg) {
  if (cfg.dynamics != Dynamics::TimeSymmetric)
    throw ConfigError("dynamics", std::string(scenario_name(cfg.scenario)) +
                                      " has no standard-equation variant");
}

/// Same-sign time pairs inside the grid, both branches when present.
std::vector<std::pair<double, double>> semigroup_pairs(const TimeGrid& g) {
  const double hi = g.time(g.size() - 1);
  const double lo = g.time(0);
  std::vector<std::pair<double, double>> pairs;
  for (auto [a, b] : {std::pair{0.1, 0.3}, {0.25, 0.5}, {0.4, 0.45}, {0.05, 0.9}}) {
    if (hi > 0.0) pairs.emplace_back(a * hi, b * hi);
    if (lo < 0.0) pairs.emplace_back(a * lo, b * lo);
  }
  return pairs;
}

// ---------------------------------------------------------------------------

class ExactBathScenario final : public PreparedScenario {
 public:
  explicit ExactBathScenario(const RunConfig& cfg)
      : model_(parse_bath_model(cfg.parameters(), {})),
        grid_(parse_time_grid(cfg.root())),
        members_(cfg.members) {
    require_symmetric_dynamics(cfg);
    if (!model_.bath.is_discrete())
      throw ConfigError("parameters.bath.modes",
                        "the exact simulation needs a finite bank; set a mode count");
  }

  ScenarioResult run(const RunContext& ctx) const override {
    std::vector<TrajectorySeries> trajs(static_cast<std::size_t>(members_));
    std::vector<double> drift(trajs.size(), 0.0);
    parallel_for(members_, ctx.threads, [&](int i) {
      const FullState init{model_.q0, model_.p0,
                           sample_thermal_state(model_.bath, ctx.seed + static_cast<std::uint64_t>(i))};
      const auto states = integrate_exact_states(model_.system, model_.bath, init, grid_);
      auto& tr = trajs[static_cast<std::size_t>(i)];
      const double e0 = total_energy(model_.system, model_.bath, init);
      double worst = 0.0;
      for (long k = 0; k < grid_.size(); ++k) {
        const auto& s = states[static_cast<std::size_t>(k)];
        tr.t.push_back(grid_.time(k));
        tr.Q.push_back(s.Q);
        tr.P.push_back(s.P);
        worst = std::max(worst, std::abs(total_energy(model_.system, model_.bath, s) - e0));
      }
      drift[static_cast<std::size_t>(i)] = worst / std::max(std::abs(e0), 1.0);
    });
    ScenarioResult res;
    for (int i = 0; i < members_; ++i) {
      auto out = open_output(ctx, res, member_file("trajectory", i, members_));
      trajs[static_cast<std::size_t>(i)].write_csv(out);
    }
    res.checks.push_back(below("exact.energy_drift", *std::max_element(drift.begin(), drift.end()),
                               kEnergyDriftLimit, "max |E(t) - E(0)| / max(|E(0)|, 1)"));
    return res;
  }

 private:
  BathModel model_;
  TimeGrid grid_;
  int members_;
};

// ---------------------------------------------------------------------------

class GleScenario final : public PreparedScenario {
 public:
  explicit GleScenario(const RunConfig& cfg)
      : model_(parse_bath_model(cfg.parameters(), {"noise", "compare_exact"})),
        grid_(parse_time_grid(cfg.root())),
        members_(cfg.members) {
    require_symmetric_dynamics(cfg);
    const Node p = cfg.parameters();
    thermal_ = p.choice<bool>("noise", {{"thermal", true}, {"none", false}}, true);
    compare_ = p.boolean("compare_exact", false);
    if (thermal_ && !model_.bath.is_discrete())
      throw ConfigError("parameters.bath.modes", "thermal noise needs a finite bank; set a mode count");
    if (compare_ && !thermal_)
      p.fail("compare_exact", "the exact comparison needs noise = thermal");
  }

  ScenarioResult run(const RunContext& ctx) const override {
    std::vector<TrajectorySeries> trajs(static_cast<std::size_t>(members_));
    std::vector<double> gap(trajs.size(), 0.0);
    parallel_for(members_, ctx.threads, [&](int i) {
      auto& tr = trajs[static_cast<std::size_t>(i)];
      if (!thermal_) {
        const NoisePath zero(grid_.times(),
                             std::vector<double>(static_cast<std::size_t>(grid_.size()), 0.0));
        tr = integrate_gle(model_.system, model_.bath, model_.q0, model_.p0, zero, grid_);
        return;
      }
      const auto state = sample_thermal_state(model_.bath, ctx.seed + static_cast<std::uint64_t>(i));
      const auto noise = coupled_noise(model_.bath, state, grid_);
      tr = integrate_gle(model_.system, model_.bath, model_.q0, model_.p0, noise, grid_);
      if (compare_) {
        const auto exact =
            integrate_exact(model_.system, model_.bath, {model_.q0, model_.p0, state}, grid_);
        double worst = 0.0;
        for (std::size_t k = 0; k < tr.size(); ++k)
          worst = std::max(worst, std::abs(tr.Q[k] - exact.Q[k]));
        gap[static_cast<std::size_t>(i)] = worst;
      }
    });
    ScenarioResult res;
    for (int i = 0; i < members_; ++i) {
      auto out = open_output(ctx, res, member_file("trajectory", i, members_));
      trajs[static_cast<std::size_t>(i)].write_csv(out);
    }
    if (compare_)
      res.checks.push_back(below("gle.matches_exact", *std::max_element(gap.begin(), gap.end()),
                                 kGleExactLimit, "max |Q_gle - Q_exact|"));
    return res;
  }

 private:
  BathModel model_;
  TimeGrid grid_;
  int members_;
  bool thermal_ = true;
  bool compare_ = false;
};

// ---------------------------------------------------------------------------

class MarkovScenario final : public PreparedScenario {
 public:
  explicit MarkovScenario(const RunConfig& cfg)
      : model_(parse_markov_model(cfg.parameters())),
        grid_(parse_time_grid(cfg.root())),
        members_(cfg.members),
        dynamics_(cfg.dynamics) {}

  ScenarioResult run(const RunContext& ctx) const override {
    std::vector<TrajectorySeries> trajs(static_cast<std::size_t>(members_));
    parallel_for(members_, ctx.threads, [&](int i) {
      MarkovNoise noise = std::monostate{};
      if (model_.white_noise)
        noise = WhiteNoise{model_.kT, ctx.seed + static_cast<std::uint64_t>(i)};
      trajs[static_cast<std::size_t>(i)] = integrate_markovian(
          model_.system, model_.gamma_m(), noise, model_.q0, model_.p0, grid_, dynamics_);
    });
    ScenarioResult res;
    for (int i = 0; i < members_; ++i) {
      auto out = open_output(ctx, res, member_file("trajectory", i, members_));
      trajs[static_cast<std::size_t>(i)].write_csv(out);
    }
    // The reflected equation needs the noise on the grid, so only the
    // noiseless run is checked.
    if (!model_.white_noise && symmetric(grid_) && grid_.size() >= 5) {
      const double r = check_time_reversal_residual(trajs.front(), model_.system,
                                                    model_.gamma_m(), nullptr, dynamics_);
      res.checks.push_back(below("langevin.time_reversal_residual", r, kReversalLimit));
    }
    return res;
  }

 private:
  MarkovModel model_;
  TimeGrid grid_;
  int members_;
  Dynamics dynamics_;
};

// ---------------------------------------------------------------------------

class BrownianScenario final : public PreparedScenario {
 public:
  explicit BrownianScenario(const RunConfig& cfg)
      : model_(parse_brownian_model(cfg.parameters())), grid_(parse_time_grid(cfg.root())) {
    require_symmetric_dynamics(cfg);
    if (!symmetric(grid_)) throw ConfigError("grid", "entropy curves need t_min = -t_max");
  }

  ScenarioResult run(const RunContext& ctx) const override {
    const auto curve = entropy_curve(model_.params, grid_, model_.variant);
    ScenarioResult res;
    auto out = open_output(ctx, res, "entropy.csv");
    curve.write_csv(out);

    const auto& s = curve.samples;
    const std::size_t origin = static_cast<std::size_t>(grid_.origin_index());
    double asym = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k)
      asym = std::max(asym, std::abs(s[k].entropy - s[s.size() - 1 - k].entropy));
    res.checks.push_back(below("brownian.entropy_at_origin", std::abs(s[origin].entropy),
                               kEntropyLimit, "pure state at t = 0"));
    res.checks.push_back(below("brownian.entropy_symmetry", asym, kEntropyLimit,
                               "max |S(t) - S(-t)|"));
    return res;
  }

 private:
  BrownianModel model_;
  TimeGrid grid_;
};

// ---------------------------------------------------------------------------

class LindbladScenario final : public PreparedScenario {
 public:
  explicit LindbladScenario(const RunConfig& cfg)
      : model_(parse_lindblad_model(cfg.parameters(), {"rho0"})),
        rho0_(parse_initial_density(cfg.parameters(), model_)),
        grid_(parse_time_grid(cfg.root())),
        dynamics_(cfg.dynamics) {
    if (grid_.size() > 200001) throw ConfigError("grid.dt", "at most 200001 samples for Lindblad runs");
  }

  ScenarioResult run(const RunContext& ctx) const override {
    const auto times = grid_.times();
    std::vector<DensityMatrix> states(times.size(), rho0_);
    parallel_for(static_cast<int>(times.size()), ctx.threads, [&](int k) {
      states[static_cast<std::size_t>(k)] =
          propagate(model_.generator, rho0_, times[static_cast<std::size_t>(k)], dynamics_);
    });
    ScenarioResult res;
    auto out = open_output(ctx, res, "density.csv");
    write_density_csv(out, times, states);

    double trace = 0.0;
    for (const auto& r : states) trace = std::max(trace, std::abs(r.data().trace() - 1.0));
    res.checks.push_back(below("lindblad.trace_preservation", trace, kTraceLimit));
    const auto rep = check_two_sided_semigroup(model_.generator, semigroup_pairs(grid_), dynamics_);
    res.checks.push_back(below("lindblad.same_sign_semigroup", rep.same_sign_defect, kSemigroupLimit));
    const double rev = check_generator_time_reversal(model_.generator, TimeReversalConvention{}, dynamics_);
    res.checks.push_back(below("lindblad.generator_time_reversal", rev, kGeneratorLimit));
    return res;
  }

 private:
  LindbladModel model_;
  DensityMatrix rho0_;
  TimeGrid grid_;
  Dynamics dynamics_;
};

// ---------------------------------------------------------------------------

class PauliScenario final : public PreparedScenario {
 public:
  explicit PauliScenario(const RunConfig& cfg)
      : model_(parse_pauli_model(cfg.parameters())),
        grid_(parse_time_grid(cfg.root())),
        dynamics_(cfg.dynamics) {}

  ScenarioResult run(const RunContext& ctx) const override {
    const auto times = grid_.times();
    std::vector<RVector> pops(times.size());
    parallel_for(static_cast<int>(times.size()), ctx.threads, [&](int k) {
      pops[static_cast<std::size_t>(k)] =
          evolve_populations(model_.rates, model_.p0, times[static_cast<std::size_t>(k)], dynamics_);
    });
    ScenarioResult res;
    auto out = open_output(ctx, res, "populations.csv");
    write_population_csv(out, times, pops);

    double total = 0.0;
    for (const auto& p : pops) total = std::max(total, std::abs(p.sum() - 1.0));
    res.checks.push_back(below("pauli.probability_conservation", total, kTraceLimit));
    res.checks.push_back(below("pauli.same_sign_semigroup",
                               population_semigroup_defect(model_.rates, semigroup_pairs(grid_)),
                               kSemigroupLimit));
    return res;
  }

 private:
  PauliModel model_;
  TimeGrid grid_;
  Dynamics dynamics_;
};

// ---------------------------------------------------------------------------

class WignerScenario final : public PreparedScenario {
 public:
  explicit WignerScenario(const RunConfig& cfg)
      : model_(parse_wigner_model(cfg.parameters(), cfg.dynamics)) {
    if (cfg.root().has("grid"))
      throw ConfigError("grid", "Wigner runs take t_final and dt from parameters");
  }

  ScenarioResult run(const RunContext& ctx) const override {
    auto grid = PhaseSpaceGrid::gaussian(model_.x_max, model_.p_max, model_.nx, model_.np,
                                         model_.initial);
    const double m0 = grid.total_mass();
    std::vector<std::pair<double, GaussianState>> trace{{grid.time(), moments(grid)}};
    PdeParams chunk = model_.pde;
    chunk.t_final = model_.pde.t_final / model_.snapshots;
    for (int s = 0; s < model_.snapshots; ++s) {
      grid = evolve(grid, chunk);
      trace.emplace_back(grid.time(), moments(grid));
    }

    ScenarioResult res;
    {
      auto out = open_output(ctx, res, "wigner.csv");
      grid.write_csv(out);
    }
    {
      auto out = open_output(ctx, res, "wigner.bin");
      grid.write_binary(out);
    }
    {
      auto out = open_output(ctx, res, "moments.csv");
      csv::write_header(out, {"t", "mean_q", "mean_p", "var_q", "var_p", "cov_qp"});
      for (const auto& [t, m] : trace)
        csv::write_row(out, {t, m.mean_q, m.mean_p, m.var_q, m.var_p, m.cov_qp});
    }
    res.checks.push_back(below("phase_space.mass_conservation",
                               std::abs(grid.total_mass() - m0) / m0, kMassLimit,
                               "max |W| on the frame " + csv::format(grid.max_boundary())));
    if (model_.reversal_check) {
      const auto r = check_phase_space_time_reversal(model_.initial, model_.x_max, model_.p_max,
                                                     model_.nx, model_.np, model_.pde);
      res.checks.push_back({"phase_space.time_reversal", r.defect, 2.0 * r.discretization_estimate,
                            r.passed, "L1 defect against twice the refinement gap"});
    }
    return res;
  }

 private:
  WignerModel model_;
};

// ---------------------------------------------------------------------------

class AuditScenario final : public PreparedScenario {
 public:
  explicit AuditScenario(const RunConfig& cfg) : plan_(plan_audit(cfg)) {}

  ScenarioResult run(const RunContext& ctx) const override {
    const auto report = execute_audit(plan_);
    ScenarioResult res;
    auto out = open_output(ctx, res, "audit.json");
    out << to_json(report).dump(2) << '\n';
    res.checks = report.checks;
    return res;
  }

 private:
  AuditPlan plan_;
};

}  // namespace

std::unique_ptr<PreparedScenario> prepare_scenario(const RunConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::ExactBath: return std::make_unique<ExactBathScenario>(cfg);
    case Scenario::GLE: return std::make_unique<GleScenario>(cfg);
    case Scenario::MarkovLangevin: return std::make_unique<MarkovScenario>(cfg);
    case Scenario::BrownianEntropy: return std::make_unique<BrownianScenario>(cfg);
    case Scenario::Lindblad: return std::make_unique<LindbladScenario>(cfg);
    case Scenario::Pauli: return std::make_unique<PauliScenario>(cfg);
    case Scenario::Wigner: return std::make_unique<WignerScenario>(cfg);
    case Scenario::SymmetryAudit: return std::make_unique<AuditScenario>(cfg);
  }
  throw ConfigError("scenario", "unknown scenario");
}

}  // namespace timesym::app
