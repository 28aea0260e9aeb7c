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

#include "timesym_app/models.hpp"

#include <string>

namespace timesym::app {

namespace {

void allow_with(const Node& n, std::initializer_list<std::string_view> base,
                std::initializer_list<std::string_view> extra) {
  // Key lists are tiny; a linear merge keeps allow_only's interface simple.
  const Json& j = n.json();
  if (!j.is_object()) n.fail("expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (auto k : base) ok = ok || it.key() == k;
    for (auto k : extra) ok = ok || it.key() == k;
    if (!ok) n.fail(it.key(), "unknown field");
  }
}

}  // namespace

BathModel parse_bath_model(const Node& params, std::initializer_list<std::string_view> extra_keys) {
  allow_with(params, {"M", "potential", "Q0", "P0", "bath"}, extra_keys);
  BathModel m;
  m.system = parse_system(params);
  m.bath = parse_bath(params.at("bath"), m.system.mass);
  m.q0 = params.number("Q0", 0.0);
  m.p0 = params.number("P0", 0.0);
  return m;
}

MarkovModel parse_markov_model(const Node& params) {
  params.allow_only({"M", "potential", "gamma", "kT", "Q0", "P0", "noise"});
  MarkovModel m;
  m.system = parse_system(params);
  m.gamma = params.non_negative("gamma", 0.0);
  if (!params.has("gamma")) params.at("gamma");
  m.kT = params.non_negative("kT", 0.0);
  m.q0 = params.number("Q0", 0.0);
  m.p0 = params.number("P0", 1.0);
  m.white_noise = params.choice<bool>("noise", {{"none", false}, {"white", true}}, false);
  if (m.white_noise && !params.has("kT")) params.at("kT");
  return m;
}

BrownianModel parse_brownian_model(const Node& params) {
  params.allow_only({"M", "gamma", "kT", "hbar", "sigma", "potential", "closed_form"});
  BrownianModel m;
  auto& p = m.params;
  p.mass = params.positive("M");
  p.gamma = params.non_negative("gamma", 0.0);
  if (!params.has("gamma")) params.at("gamma");
  p.kT = params.non_negative("kT", 0.0);
  if (!params.has("kT")) params.at("kT");
  p.hbar = params.positive("hbar", 1.0);
  p.sigma = params.positive("sigma", 1.0);
  p.potential = parse_potential(params);
  m.variant = params.choice<ClosedFormVariant>(
      "closed_form",
      {{"master_equation", ClosedFormVariant::MasterEquation},
       {"printed", ClosedFormVariant::Printed}},
      ClosedFormVariant::MasterEquation);
  validated(params.path(), [&] { p.validate(); });
  return m;
}

namespace {

HermitianOperator hermitian_at(const Node& n) {
  return validated(n.path(), [&] { return HermitianOperator(parse_matrix(n)); });
}

void finish_generator(LindbladModel& m, const std::string& path) {
  validated(path, [&] {
    m.generator = build_generator(m.eig, m.table, m.hamiltonian, m.hbar);
    m.generator.validate();
  });
}

}  // namespace

LindbladModel parse_lindblad_model(const Node& params,
                                   std::initializer_list<std::string_view> extra_keys) {
  allow_with(params, {"hbar", "H", "couplings", "spectral", "frequency_tolerance"}, extra_keys);
  LindbladModel m;
  m.hbar = params.positive("hbar", 1.0);
  m.hamiltonian = hermitian_at(params.at("H"));
  for (const Node& c : params.at("couplings").items()) {
    m.couplings.push_back(hermitian_at(c));
    if (m.couplings.back().dim() != m.hamiltonian.dim())
      c.fail("dimension differs from H");
  }
  if (m.couplings.empty()) params.fail("couplings", "at least one coupling operator is required");
  std::optional<double> tol;
  if (params.has("frequency_tolerance")) tol = params.positive("frequency_tolerance");
  m.eig = validated(params.child_path("H"), [&] {
    return eigenoperator_decompose(m.hamiltonian, m.couplings, tol, m.hbar);
  });

  const Node spec = params.at("spectral");
  const std::string kind = spec.string("kind");
  if (kind == "thermal_bosonic") {
    spec.allow_only({"kind", "kappa", "kT", "cutoff"});
    const double kappa = spec.non_negative("kappa", 0.0);
    if (!spec.has("kappa")) spec.at("kappa");
    const double kT = spec.positive("kT");
    const double cutoff = spec.positive("cutoff", 1e300);
    m.kT = kT;
    m.table = validated(spec.path(), [&] {
      return SpectralFunctionTable::thermal_bosonic(m.eig, kappa, kT, cutoff, m.hbar);
    });
  } else if (kind == "table") {
    spec.allow_only({"kind", "entries", "kT"});
    if (spec.has("kT")) m.kT = spec.positive("kT");
    m.table = SpectralFunctionTable(m.eig.coupling_count());
    for (const Node& e : spec.at("entries").items()) {
      e.allow_only({"omega", "gamma", "eta"});
      const double omega = e.number("omega");
      const CMatrix g = parse_matrix(e.at("gamma"));
      const CMatrix eta = e.has("eta") ? parse_matrix(e.at("eta")) : CMatrix();
      validated(e.path(), [&] { m.table.set(omega, g, eta); });
    }
  } else {
    spec.fail("kind", "unknown spectral kind '" + kind + "' (expected thermal_bosonic, table)");
  }
  finish_generator(m, spec.path());
  return m;
}

DensityMatrix parse_initial_density(const Node& params, const LindbladModel& model) {
  const Node r = params.at("rho0");
  const std::string kind = r.string("kind");
  const auto dim = model.hamiltonian.dim();
  return validated(r.path(), [&]() -> DensityMatrix {
    if (kind == "maximally_mixed") {
      r.allow_only({"kind"});
      return DensityMatrix::maximally_mixed(dim);
    }
    if (kind == "gibbs") {
      r.allow_only({"kind", "kT"});
      const double kT = r.has("kT") ? r.positive("kT") : model.kT.value_or(0.0);
      if (!(kT > 0.0)) r.fail("kT", "required when the spectral record carries no temperature");
      return gibbs_state(model.hamiltonian.data(), kT);
    }
    if (kind == "diagonal") {
      r.allow_only({"kind", "populations"});
      const auto p = r.numbers("populations");
      if (static_cast<Eigen::Index>(p.size()) != dim)
        r.fail("populations", "expected " + std::to_string(dim) + " entries");
      return DensityMatrix::diagonal(Eigen::Map<const RVector>(p.data(), dim));
    }
    if (kind == "matrix") {
      r.allow_only({"kind", "matrix"});
      const CMatrix rho = parse_matrix(r.at("matrix"));
      if (rho.rows() != dim) r.fail("matrix", "dimension differs from H");
      return DensityMatrix(rho);
    }
    r.fail("kind", "unknown initial state '" + kind +
                       "' (expected maximally_mixed, gibbs, diagonal, matrix)");
  });
}

LindbladModel builtin_two_level_damping() {
  LindbladModel m;
  CMatrix h = CMatrix::Zero(2, 2);
  h(1, 1) = 1.0;
  CMatrix sx = CMatrix::Zero(2, 2);
  sx(0, 1) = sx(1, 0) = 1.0;
  m.hamiltonian = HermitianOperator(h);
  m.couplings = {HermitianOperator(sx)};
  m.eig = eigenoperator_decompose(m.hamiltonian, m.couplings);
  m.kT = 1.0;
  m.table = SpectralFunctionTable::thermal_bosonic(m.eig, 0.5, 1.0, 20.0);
  finish_generator(m, "");
  return m;
}

PauliModel parse_pauli_model(const Node& params) {
  params.allow_only({"W", "energies", "lindblad", "p0"});
  PauliModel m;
  if (params.has("W") == params.has("lindblad"))
    params.fail("give exactly one of 'W' (rate matrix) or 'lindblad' (generator record)");
  if (params.has("W")) {
    const Node w = params.at("W");
    const CMatrix raw = parse_matrix(w);
    if (raw.imag().cwiseAbs().maxCoeff() > 0.0) w.fail("rates must be real");
    m.rates.W = raw.real();
    const auto n = m.rates.W.rows();
    if (params.has("energies")) {
      const auto e = params.numbers("energies");
      if (static_cast<Eigen::Index>(e.size()) != n)
        params.fail("energies", "expected " + std::to_string(n) + " entries");
      m.rates.energies = Eigen::Map<const RVector>(e.data(), n);
    } else {
      m.rates.energies = RVector::LinSpaced(n, 0.0, static_cast<double>(n - 1));
    }
    validated(w.path(), [&] { m.rates.validate(); });
  } else {
    if (params.has("energies")) params.fail("energies", "energies come from the generator record");
    const Node l = params.at("lindblad");
    const LindbladModel lm = parse_lindblad_model(l, {});
    m.rates = validated(l.path(), [&] {
      return rates_from_lindblad(lm.eig, lm.table, lm.hamiltonian, lm.couplings, lm.hbar);
    });
  }
  const auto p = params.numbers("p0");
  if (static_cast<Eigen::Index>(p.size()) != m.rates.size())
    params.fail("p0", "expected " + std::to_string(m.rates.size()) + " entries");
  m.p0 = Eigen::Map<const RVector>(p.data(), m.rates.size());
  validated(params.child_path("p0"), [&] { PopulationVector check(m.p0); });
  return m;
}

WignerModel parse_wigner_model(const Node& params, Dynamics dynamics) {
  params.allow_only({"M", "gamma", "kT", "hbar", "potential", "mode", "n_max", "diffusion",
                     "initial", "phase_grid", "t_final", "dt", "direction", "snapshots",
                     "reversal_check"});
  WignerModel m;
  auto& p = m.pde;
  p.mass = params.positive("M");
  p.gamma = params.non_negative("gamma", 0.0);
  if (!params.has("gamma")) params.at("gamma");
  p.kT = params.non_negative("kT", 0.0);
  if (!params.has("kT")) params.at("kT");
  p.hbar = params.positive("hbar", 1.0);
  p.potential = parse_potential(params);
  p.mode = params.choice<PdeMode>(
      "mode", {{"quantum_wigner", PdeMode::QuantumWigner}, {"classical_fp", PdeMode::ClassicalFP}},
      PdeMode::QuantumWigner);
  const auto n_max = params.integer("n_max", 1);
  if (n_max < 1 || n_max > 3) params.fail("n_max", "must be 1, 2 or 3");
  p.n_max = static_cast<int>(n_max);
  p.diffusion = params.choice<DiffusionConvention>(
      "diffusion",
      {{"printed", DiffusionConvention::Printed},
       {"caldeira_leggett", DiffusionConvention::StandardCaldeiraLeggett}},
      DiffusionConvention::Printed);
  p.direction = params.choice<Direction>(
      "direction", {{"forward", Direction::Forward}, {"backward", Direction::Backward}},
      Direction::Forward);
  p.t_final = params.non_negative("t_final", 0.0);
  if (!params.has("t_final")) params.at("t_final");
  p.dynamics = dynamics;

  const Node ini = params.at("initial");
  ini.allow_only({"mean_q", "mean_p", "var_q", "var_p", "cov_qp"});
  m.initial = GaussianState{ini.number("mean_q", 0.0), ini.number("mean_p", 0.0),
                            ini.positive("var_q"), ini.positive("var_p"),
                            ini.number("cov_qp", 0.0)};
  if (!(m.initial.determinant() > 0.0)) ini.fail("covariance must be positive definite");

  const Node g = params.at("phase_grid");
  g.allow_only({"x_max", "p_max", "nx", "np"});
  m.x_max = g.positive("x_max");
  m.p_max = g.positive("p_max");
  const auto nx = g.integer("nx");
  const auto np = g.integer("np");
  if (nx < 5 || nx > 4097) g.fail("nx", "must be in [5, 4097]");
  if (np < 5 || np > 4097) g.fail("np", "must be in [5, 4097]");
  m.nx = static_cast<int>(nx);
  m.np = static_cast<int>(np);

  const auto snaps = params.integer("snapshots", 1);
  if (snaps < 1 || snaps > 10000) params.fail("snapshots", "must be in [1, 10000]");
  m.snapshots = static_cast<int>(snaps);
  m.reversal_check = params.boolean("reversal_check", false);

  // Step defaults to 0.9 of the stability limit on the configured grid.
  const PhaseSpaceGrid probe(m.x_max, m.p_max, m.nx, m.np);
  validated(params.path(), [&] { p.validate(); });
  const double stable = validated(params.path(), [&] { return max_stable_dt(probe, p); });
  if (params.has("dt")) {
    p.dt = params.positive("dt");
    m.dt_given = true;
    if (p.dt > stable)
      params.fail("dt", "exceeds the stability limit " + std::to_string(stable) + " of this grid");
  } else {
    p.dt = 0.9 * stable;
  }
  return m;
}

}  // namespace timesym::app
