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

#include "timesym/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "timesym/csv.hpp"

namespace timesym {

void RateMatrix::validate() const {
  if (W.rows() == 0 || W.rows() != W.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "rate matrix must be square and non-empty");
  }
  if (energies.size() != 0 && energies.size() != W.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "energies and rate matrix differ in size");
  }
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    for (Eigen::Index j = 0; j < W.cols(); ++j) {
      if (i != j && (!(W(i, j) >= 0.0) || !std::isfinite(W(i, j)))) {
        std::ostringstream os;
        os << "rate W(" << i << ", " << j << ") = " << W(i, j) << " must be >= 0";
        throw Error(ErrorCode::InvalidArgument, os.str());
      }
    }
  }
}

RMatrix RateMatrix::generator() const {
  validate();
  RMatrix k = W;
  k.diagonal().setZero();
  const RVector outflow = k.colwise().sum().transpose();
  k.diagonal() = -outflow;
  return k;
}

PopulationVector::PopulationVector(RVector p) : p_(std::move(p)) {
  if (p_.size() == 0) throw Error(ErrorCode::InvalidArgument, "population vector is empty");
  if (!p_.allFinite() || p_.minCoeff() < -1e-12 || std::abs(p_.sum() - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "populations must be >= 0 and sum to 1 (min " << p_.minCoeff() << ", sum "
       << p_.sum() << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

PopulationVector PopulationVector::uniform(Eigen::Index n) {
  return PopulationVector(RVector::Constant(n, 1.0 / static_cast<double>(n)));
}

RateMatrix rates_from_lindblad(const EigenoperatorSet& eig, const SpectralFunctionTable& spec,
                               const HermitianOperator& hamiltonian,
                               const std::vector<HermitianOperator>& couplings,
                               double hbar) {
  const Eigen::Index n = hamiltonian.dim();
  if (couplings.size() != spec.coupling_count()) {
    throw Error(ErrorCode::DimensionMismatch, "coupling count differs from the spectral table");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hamiltonian.data());
  const RVector e = solver.eigenvalues();
  const CMatrix& v = solver.eigenvectors();
  const double scale = std::max(e.cwiseAbs().maxCoeff(), 1e-300);
  for (Eigen::Index i = 1; i < n; ++i) {
    if (e(i) - e(i - 1) <= 1e-9 * scale) {
      std::ostringstream os;
      os << "levels " << i - 1 << " and " << i << " are degenerate (" << e(i - 1) << ", "
         << e(i) << "); use the golden-rule form";
      throw Error(ErrorCode::DegenerateSpectrum, os.str());
    }
  }
  std::vector<CMatrix> elements;  // couplings in the eigenbasis
  for (const auto& a : couplings) elements.push_back(v.adjoint() * a.data() * v);

  const double lookup = 1e-9 * (1.0 + scale / hbar);
  RateMatrix out;
  out.energies = e;
  out.W = RMatrix::Zero(n, n);
  const std::size_t na = couplings.size();
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (m == k) continue;
      // Jump k -> m releases hbar w = e_k - e_m.
      const double w = (e(k) - e(m)) / hbar;
      if (!eig.find(w, lookup)) continue;
      const CMatrix& gam = spec.gamma(w, lookup);
      Complex rate(0.0, 0.0);
      for (std::size_t a = 0; a < na; ++a) {
        for (std::size_t b = 0; b < na; ++b) {
          rate += gam(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
                  elements[a](k, m) * elements[b](m, k);
        }
      }
      out.W(m, k) = std::max(0.0, rate.real()) / (hbar * hbar);
    }
  }
  return out;
}

RateMatrix golden_rule_rates(const CMatrix& shell_elements, double lambda,
                             double density_of_states, double shell_energy, double hbar) {
  if (shell_elements.rows() == 0 || shell_elements.rows() != shell_elements.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "shell matrix elements must be square");
  }
  if (max_hermiticity_defect(shell_elements) > kHermiticityTolerance) {
    throw Error(ErrorCode::InvalidArgument, "shell matrix elements must be Hermitian");
  }
  if (!(density_of_states > 0.0) || !(hbar > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::InvalidArgument,
                "golden rule needs a positive density of states and hbar");
  }
  const Eigen::Index n = shell_elements.rows();
  RateMatrix out;
  out.W = (2.0 * lambda * lambda / hbar * density_of_states) *
          shell_elements.cwiseAbs2();
  out.W.diagonal().setZero();
  out.energies = RVector::Constant(n, shell_energy);
  for (Eigen::Index k = 0; k < n; ++k) out.labels.emplace_back(shell_energy, static_cast<int>(k));
  return out;
}

RVector evolve_populations(const RateMatrix& w, const RVector& p0, double t, Dynamics dynamics) {
  if (p0.size() != w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "population vector and rate matrix differ");
  }
  if (t == 0.0) return p0;
  const double tau = dynamics == Dynamics::TimeSymmetric ? std::abs(t) : t;
  const RMatrix k = w.generator();
  return (k * tau).exp() * p0;
}

PopulationVector propagate_populations(const RateMatrix& w, const PopulationVector& p0,
                                       double t) {
  RVector p = evolve_populations(w, p0.values(), t);
  // Round-off below zero from the exponential.
  p = p.cwiseMax(0.0);
  return PopulationVector(p / p.sum());
}

const PopulationVector& StationaryDistribution::distribution() const {
  if (!unique()) {
    std::ostringstream os;
    os << "rate matrix is reducible with " << per_class.size()
       << " closed classes; pick one from per_class";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  return per_class.front();
}

StationaryDistribution stationary_distribution(const RateMatrix& w) {
  w.validate();
  const Eigen::Index n = w.size();
  // Tarjan's strongly connected components on the jump graph m -> k when W(k, m) > 0.
  std::vector<Eigen::Index> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack;
  std::vector<Eigen::Index> component(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<Eigen::Index>> components;
  Eigen::Index counter = 0;
  auto edge = [&](Eigen::Index from, Eigen::Index to) { return from != to && w.W(to, from) > 0.0; };
  std::function<void(Eigen::Index)> visit = [&](Eigen::Index u) {
    const auto su = static_cast<std::size_t>(u);
    index[su] = low[su] = counter++;
    stack.push_back(u);
    on_stack[su] = true;
    for (Eigen::Index x = 0; x < n; ++x) {
      if (!edge(u, x)) continue;
      const auto sx = static_cast<std::size_t>(x);
      if (index[sx] < 0) {
        visit(x);
        low[su] = std::min(low[su], low[sx]);
      } else if (on_stack[sx]) {
        low[su] = std::min(low[su], index[sx]);
      }
    }
    if (low[su] == index[su]) {
      std::vector<Eigen::Index> members;
      Eigen::Index x;
      do {
        x = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(x)] = false;
        component[static_cast<std::size_t>(x)] = static_cast<Eigen::Index>(components.size());
        members.push_back(x);
      } while (x != u);
      std::sort(members.begin(), members.end());
      components.push_back(std::move(members));
    }
  };
  for (Eigen::Index u = 0; u < n; ++u) {
    if (index[static_cast<std::size_t>(u)] < 0) visit(u);
  }

  StationaryDistribution out;
  const RMatrix k = w.generator();
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& members = components[c];
    bool closed = true;
    for (Eigen::Index u : members) {
      for (Eigen::Index x = 0; x < n && closed; ++x) {
        if (edge(u, x) && component[static_cast<std::size_t>(x)] != static_cast<Eigen::Index>(c)) {
          closed = false;
        }
      }
    }
    if (!closed) continue;
    const auto m = static_cast<Eigen::Index>(members.size());
    RMatrix sub(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = k(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
    }
    // Normalization replaces the first balance equation.
    sub.row(0).setOnes();
    RVector rhs = RVector::Zero(m);
    rhs(0) = 1.0;
    const RVector local = sub.fullPivLu().solve(rhs);
    RVector p = RVector::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) p(members[static_cast<std::size_t>(i)]) = std::max(0.0, local(i));
    out.closed_classes.push_back(members);
    out.per_class.emplace_back(p / p.sum());
  }
  return out;
}

double relative_entropy(const RVector& p, const RVector& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch, "distributions differ in size");
  }
  double d = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) <= 0.0) continue;
    if (q(i) <= 0.0) return std::numeric_limits<double>::infinity();
    d += p(i) * std::log(p(i) / q(i));
  }
  return d;
}

double population_semigroup_defect(const RateMatrix& w,
                                   const std::vector<std::pair<double, double>>& samples) {
  const RMatrix k = w.generator();
  auto flow = [&](double t) -> RMatrix { return (k * std::abs(t)).exp(); };
  double worst = 0.0;
  for (const auto& [t1, t2] : samples) {
    if ((t1 >= 0.0) != (t2 >= 0.0)) continue;
    worst = std::max(worst, (flow(t1 + t2) - flow(t1) * flow(t2)).norm());
  }
  return worst;
}

void write_population_csv(std::ostream& os, const std::vector<double>& times,
                          const std::vector<RVector>& populations) {
  if (times.size() != populations.size()) {
    throw Error(ErrorCode::DimensionMismatch, "times and populations differ in length");
  }
  if (populations.empty()) return;
  const Eigen::Index n = populations.front().size();
  std::vector<std::string> header{"t"};
  for (Eigen::Index i = 1; i <= n; ++i) header.push_back("p_" + std::to_string(i));
  csv::write_header(os, header);
  std::vector<double> row;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (populations[k].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "population rows differ in size");
    }
    row.assign(1, times[k]);
    for (Eigen::Index i = 0; i < n; ++i) row.push_back(populations[k](i));
    csv::write_row(os, row);
  }
}

}  // namespace timesym
