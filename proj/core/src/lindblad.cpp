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

#include "timesym/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "timesym/csv.hpp"
#include "timesym/quadrature.hpp"

namespace timesym {

namespace {

constexpr double kRoundOff = 1e3 * std::numeric_limits<double>::epsilon();

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

// Superoperator of X -> L X R.
CMatrix sandwich(const CMatrix& left, const CMatrix& right) {
  return Eigen::kroneckerProduct(right.transpose(), left).eval();
}

void require_dim(const CMatrix& m, Eigen::Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << ", expected " << dim << "x" << dim;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m + m.adjoint()),
                                                Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

std::optional<std::size_t> EigenoperatorSet::find(double omega, double tol) const {
  auto it = std::lower_bound(frequencies.begin(), frequencies.end(), omega - tol);
  if (it != frequencies.end() && std::abs(*it - omega) <= tol) {
    return static_cast<std::size_t>(it - frequencies.begin());
  }
  return std::nullopt;
}

double EigenoperatorSet::completeness_defect(
    const std::vector<HermitianOperator>& couplings) const {
  if (couplings.size() != operators.size()) {
    throw Error(ErrorCode::DimensionMismatch, "coupling count differs from the decomposition");
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < operators.size(); ++a) {
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const auto& op : operators[a]) sum += op;
    worst = std::max(worst, (sum - couplings[a].data()).cwiseAbs().maxCoeff());
  }
  return worst;
}

double EigenoperatorSet::conjugation_defect() const {
  double worst = 0.0;
  const std::size_t nf = frequencies.size();
  for (const auto& ops : operators) {
    for (std::size_t k = 0; k < nf; ++k) {
      const auto mirror = find(-frequencies[k], kRoundOff * (1.0 + std::abs(frequencies[k])));
      const double norm =
          mirror ? (ops[*mirror] - ops[k].adjoint()).cwiseAbs().maxCoeff()
                 : ops[k].cwiseAbs().maxCoeff();
      worst = std::max(worst, norm);
    }
  }
  return worst;
}

EigenoperatorSet eigenoperator_decompose(const HermitianOperator& hamiltonian,
                                         const std::vector<HermitianOperator>& couplings,
                                         std::optional<double> freq_tol, double hbar) {
  const Eigen::Index n = hamiltonian.dim();
  for (const auto& a : couplings) require_dim(a.data(), n, "coupling operator");
  if (!(hbar > 0.0)) throw Error(ErrorCode::InvalidArgument, "hbar must be positive");

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hamiltonian.data());
  const RVector energies = solver.eigenvalues();
  const CMatrix& basis = solver.eigenvectors();
  const double scale = std::max(energies.cwiseAbs().maxCoeff(), 1e-300);
  const double tol = freq_tol.value_or(1e-9 * scale / hbar);
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "freq_tol must be positive");
  const double same = kRoundOff * scale;

  // Eigenspaces: consecutive eigenvalues within round-off are one level.
  std::vector<double> levels;
  std::vector<CMatrix> projectors;
  for (Eigen::Index i = 0; i < n; ++i) {
    const CVector v = basis.col(i);
    if (!levels.empty() && energies(i) - levels.back() <= same) {
      projectors.back() += v * v.adjoint();
    } else {
      levels.push_back(energies(i));
      projectors.push_back(v * v.adjoint());
    }
  }

  // Bohr frequencies for every ordered pair of levels.
  // Gaps whose blocks vanish for every coupling carry no jump and are dropped.
  struct Gap {
    double omega;
    std::vector<CMatrix> blocks;  // Pi_lower A_alpha Pi_upper
  };
  double coupling_scale = 0.0;
  for (const auto& a : couplings) coupling_scale = std::max(coupling_scale, a.data().norm());
  std::vector<Gap> gaps;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = 0; j < levels.size(); ++j) {
      Gap gap{(levels[j] - levels[i]) / hbar, {}};
      bool nonzero = false;
      for (const auto& a : couplings) {
        gap.blocks.push_back(projectors[i] * a.data() * projectors[j]);
        nonzero = nonzero || gap.blocks.back().norm() > kRoundOff * coupling_scale;
      }
      if (nonzero) gaps.push_back(std::move(gap));
    }
  }
  std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) { return a.omega < b.omega; });

  EigenoperatorSet out;
  out.dim = n;
  std::vector<std::size_t> group(gaps.size());
  const double same_omega = same / hbar;
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    if (!out.frequencies.empty()) {
      const double diff = gaps[g].omega - out.frequencies.back();
      if (diff <= same_omega) {
        group[g] = out.frequencies.size() - 1;
        continue;
      }
      if (diff <= tol) {
        std::ostringstream os;
        os.precision(17);
        os << "Bohr frequencies " << out.frequencies.back() << " and " << gaps[g].omega
           << " differ by " << diff << ", within freq_tol " << tol
           << "; secular grouping is ambiguous";
        throw Error(ErrorCode::AmbiguousSecularGrouping, os.str());
      }
    }
    out.frequencies.push_back(gaps[g].omega);
    group[g] = out.frequencies.size() - 1;
  }
  // Exact zero and exact +/- symmetry of the stored values.
  const std::size_t nf = out.frequencies.size();
  for (std::size_t k = 0; k < nf; ++k) {
    const double a = out.frequencies[k];
    const double b = -out.frequencies[nf - 1 - k];
    out.frequencies[k] = 0.5 * (a + b);
  }

  out.operators.assign(couplings.size(), std::vector<CMatrix>(nf, CMatrix::Zero(n, n)));
  for (std::size_t a = 0; a < couplings.size(); ++a) {
    for (std::size_t g = 0; g < gaps.size(); ++g) out.operators[a][group[g]] += gaps[g].blocks[a];
  }
  return out;
}

SpectralFunctionTable::SpectralFunctionTable(std::size_t coupling_count)
    : couplings_(coupling_count) {
  if (coupling_count == 0) {
    throw Error(ErrorCode::InvalidArgument, "spectral table needs at least one coupling");
  }
}

void SpectralFunctionTable::set(double omega, const CMatrix& gamma, const CMatrix& eta) {
  const auto n = static_cast<Eigen::Index>(couplings_);
  require_dim(gamma, n, "gamma matrix");
  if (max_hermiticity_defect(gamma) > 1e-10) {
    throw Error(ErrorCode::NotPositiveSemidefinite, "gamma matrix is not Hermitian");
  }
  const double lowest = min_hermitian_eigenvalue(gamma);
  if (lowest < -1e-10) {
    std::ostringstream os;
    os << "gamma matrix at omega = " << omega << " has eigenvalue " << lowest;
    throw Error(ErrorCode::NotPositiveSemidefinite, os.str());
  }
  CMatrix eta_full = eta.size() == 0 ? CMatrix::Zero(n, n) : eta;
  require_dim(eta_full, n, "eta matrix");
  if (max_hermiticity_defect(eta_full) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "eta matrix is not Hermitian");
  }
  for (std::size_t k = 0; k < omegas_.size(); ++k) {
    if (std::abs(omegas_[k] - omega) <= kRoundOff * (1.0 + std::abs(omega))) {
      gammas_[k] = gamma;
      etas_[k] = eta_full;
      return;
    }
  }
  omegas_.push_back(omega);
  gammas_.push_back(gamma);
  etas_.push_back(std::move(eta_full));
}

SpectralFunctionTable SpectralFunctionTable::thermal_bosonic(const EigenoperatorSet& eig,
                                                             double kappa, double kT,
                                                             double cutoff, double hbar) {
  if (!(kappa >= 0.0) || !(kT >= 0.0) || !(cutoff > 0.0) || !(hbar > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "thermal table needs kappa >= 0, kT >= 0, cutoff > 0, hbar > 0");
  }
  SpectralFunctionTable table(eig.coupling_count());
  const auto n = static_cast<Eigen::Index>(eig.coupling_count());
  for (double w : eig.frequencies) {
    double rate;
    if (kT == 0.0) {
      rate = w > 0.0 ? kappa * w : 0.0;
    } else if (std::abs(w) * hbar < 1e-12 * kT) {
      rate = kappa * kT / hbar;
    } else {
      rate = kappa * w / -std::expm1(-hbar * w / kT);
    }
    rate *= std::exp(-std::abs(w) / cutoff);
    table.set(w, CMatrix::Identity(n, n) * rate);
  }
  return table;
}

std::size_t SpectralFunctionTable::index(double omega, double tol) const {
  for (std::size_t k = 0; k < omegas_.size(); ++k) {
    if (std::abs(omegas_[k] - omega) <= tol) return k;
  }
  std::ostringstream os;
  os << "spectral table has no entry at omega = " << omega;
  throw Error(ErrorCode::InvalidArgument, os.str());
}

const CMatrix& SpectralFunctionTable::gamma(double omega, double tol) const {
  return gammas_[index(omega, tol)];
}

const CMatrix& SpectralFunctionTable::eta(double omega, double tol) const {
  return etas_[index(omega, tol)];
}

double SpectralFunctionTable::kms_defect(double kT, double hbar, double tol) const {
  double worst = 0.0;
  for (std::size_t k = 0; k < omegas_.size(); ++k) {
    const double w = omegas_[k];
    std::size_t mirror = omegas_.size();
    for (std::size_t j = 0; j < omegas_.size(); ++j) {
      if (std::abs(omegas_[j] + w) <= tol) mirror = j;
    }
    if (mirror == omegas_.size()) continue;
    const double boltzmann = kT > 0.0 ? std::exp(-hbar * w / kT) : (w > 0.0 ? 0.0 : 1.0);
    if (!std::isfinite(boltzmann)) continue;  // checked from the mirrored side
    const CMatrix expected = boltzmann * gammas_[k].adjoint();
    worst = std::max(worst, (gammas_[mirror] - expected).cwiseAbs().maxCoeff());
  }
  return worst;
}

Complex bath_gamma_of_t(const CorrelationFunction& corr, double omega, double t) {
  if (t == 0.0) return {0.0, 0.0};
  return quad::integrate_complex(
      [&](double s) { return std::exp(Complex(0.0, omega * s)) * corr(s); }, 0.0, t, 1e-12);
}

Complex two_sided_transform(const CorrelationFunction& corr, double omega, double t) {
  if (t == 0.0) return {0.0, 0.0};
  const double a = std::abs(t);
  auto f = [&](double s) { return std::exp(Complex(0.0, omega * s)) * corr(s); };
  // Split at 0 so kinks of stationary correlations sit on an endpoint.
  const Complex total = quad::integrate_complex(f, -a, 0.0, 1e-12) +
                        quad::integrate_complex(f, 0.0, a, 1e-12);
  return sgn(t) * total;
}

void Superoperator::validate() const {
  const Eigen::Index n2 = dim * dim;
  if (dim <= 0 || hamiltonian_part.rows() != n2 || hamiltonian_part.cols() != n2 ||
      dissipative_part.rows() != n2 || dissipative_part.cols() != n2) {
    throw Error(ErrorCode::DimensionMismatch, "superoperator blocks must be dim^2 x dim^2");
  }
}

CMatrix Superoperator::exponent(double t, Dynamics dynamics) const {
  const double d = dynamics == Dynamics::TimeSymmetric ? std::abs(t) : t;
  return hamiltonian_part * t + dissipative_part * d;
}

double Superoperator::trace_annihilation_defect() const {
  // Trace functional in column stacking: entries at diagonal positions i + i*n.
  CMatrix row = CMatrix::Zero(1, dim * dim);
  for (Eigen::Index i = 0; i < dim; ++i) row(0, i + i * dim) = 1.0;
  return std::max((row * hamiltonian_part).cwiseAbs().maxCoeff(),
                  (row * dissipative_part).cwiseAbs().maxCoeff());
}

CMatrix vec(const CMatrix& m) {
  return Eigen::Map<const CMatrix>(m.data(), m.size(), 1);
}

CMatrix unvec(const CMatrix& v, Eigen::Index dim) {
  if (v.size() != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "vector length is not dim^2");
  }
  return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

Superoperator unitary_generator(const HermitianOperator& hamiltonian, double hbar) {
  const Eigen::Index n = hamiltonian.dim();
  const CMatrix& h = hamiltonian.data();
  Superoperator g;
  g.dim = n;
  g.hamiltonian_part = Complex(0.0, -1.0 / hbar) * (sandwich(h, identity(n)) -
                                                     sandwich(identity(n), h));
  g.dissipative_part = CMatrix::Zero(n * n, n * n);
  return g;
}

Superoperator build_generator(const EigenoperatorSet& eig, const SpectralFunctionTable& spec,
                              const HermitianOperator& hamiltonian, double hbar) {
  const Eigen::Index n = hamiltonian.dim();
  if (eig.dim != n) {
    throw Error(ErrorCode::DimensionMismatch, "decomposition and Hamiltonian dims differ");
  }
  if (spec.coupling_count() != eig.coupling_count()) {
    throw Error(ErrorCode::DimensionMismatch, "spectral table and decomposition differ in couplings");
  }
  const double lookup = 1e-9 * (1.0 + std::abs(eig.frequencies.empty()
                                                   ? 0.0
                                                   : eig.frequencies.back()));
  const std::size_t na = eig.coupling_count();
  CMatrix lamb = CMatrix::Zero(n, n);
  CMatrix diss = CMatrix::Zero(n * n, n * n);
  for (std::size_t k = 0; k < eig.frequencies.size(); ++k) {
    const double w = eig.frequencies[k];
    const CMatrix& gam = spec.gamma(w, lookup);
    const CMatrix& eta = spec.eta(w, lookup);
    for (std::size_t a = 0; a < na; ++a) {
      const CMatrix a_dag = eig.operators[a][k].adjoint();
      for (std::size_t b = 0; b < na; ++b) {
        const auto ia = static_cast<Eigen::Index>(a);
        const auto ib = static_cast<Eigen::Index>(b);
        const CMatrix& a_b = eig.operators[b][k];
        const CMatrix product = a_dag * a_b;
        if (eta(ia, ib) != Complex(0.0, 0.0)) lamb += eta(ia, ib) * product;
        const Complex rate = gam(ia, ib);
        if (rate == Complex(0.0, 0.0)) continue;
        diss += rate * (sandwich(a_b, a_dag) - 0.5 * sandwich(product, identity(n)) -
                        0.5 * sandwich(identity(n), product));
      }
    }
  }
  lamb = 0.5 * (lamb + lamb.adjoint()).eval() / hbar;
  Superoperator g =
      unitary_generator(HermitianOperator(hamiltonian.data() + lamb, hamiltonian.units()), hbar);
  g.dissipative_part = diss / (hbar * hbar);
  return g;
}

CMatrix propagator(const Superoperator& g, double t, Dynamics dynamics) {
  g.validate();
  if (t == 0.0) return identity(g.dim * g.dim);
  return g.exponent(t, dynamics).exp();
}

DensityMatrix propagate(const Superoperator& g, const DensityMatrix& rho0, double t,
                        Dynamics dynamics) {
  require_dim(rho0.data(), g.dim, "initial state");
  if (t == 0.0) return rho0;
  CMatrix rho = unvec(propagator(g, t, dynamics) * vec(rho0.data()), g.dim);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

DensityMatrix steady_state(const Superoperator& g) {
  g.validate();
  const Eigen::Index n = g.dim;
  CMatrix system = g.hamiltonian_part + g.dissipative_part;
  CMatrix rhs = CMatrix::Zero(n * n, 1);
  // Replace the first equation with the trace condition.
  system.row(0).setZero();
  for (Eigen::Index i = 0; i < n; ++i) system(0, i + i * n) = 1.0;
  rhs(0, 0) = 1.0;
  Eigen::FullPivLU<CMatrix> lu(system);
  if (lu.rank() < n * n) {
    throw Error(ErrorCode::InvalidArgument, "generator has no unique steady state");
  }
  CMatrix rho = unvec(lu.solve(rhs), n);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

SemigroupReport check_two_sided_semigroup(const Superoperator& g,
                                          const std::vector<std::pair<double, double>>& samples,
                                          Dynamics dynamics) {
  SemigroupReport report;
  const CMatrix id = identity(g.dim * g.dim);
  for (const auto& [t1, t2] : samples) {
    const CMatrix e1 = propagator(g, t1, dynamics);
    if ((t1 >= 0.0) == (t2 >= 0.0)) {
      const CMatrix e2 = propagator(g, t2, dynamics);
      const CMatrix e12 = propagator(g, t1 + t2, dynamics);
      report.same_sign_defect = std::max(report.same_sign_defect, (e12 - e1 * e2).norm());
      ++report.same_sign_pairs;
    }
    const double a = std::abs(t1);
    const CMatrix round_trip = propagator(g, -a, dynamics) * propagator(g, a, dynamics);
    report.mixed_sign_defect = std::max(report.mixed_sign_defect, (round_trip - id).norm());
  }
  return report;
}

CMatrix time_reverse_superoperator(const CMatrix& l, const TimeReversalConvention& conv,
                                   Eigen::Index dim) {
  conv.validate(dim);
  const CMatrix u = conv.unitary(dim);
  const CMatrix s = Eigen::kroneckerProduct(u.conjugate(), u).eval();
  // S is unitary, so S^-1 = S^dagger.
  return s * l.conjugate() * s.adjoint();
}

double check_generator_time_reversal(const Superoperator& g, const TimeReversalConvention& conv,
                                     Dynamics dynamics) {
  g.validate();
  const CMatrix h = time_reverse_superoperator(g.hamiltonian_part, conv, g.dim);
  const CMatrix d = time_reverse_superoperator(g.dissipative_part, conv, g.dim);
  const double h_defect = (h + g.hamiltonian_part).norm();
  const double d_defect = dynamics == Dynamics::TimeSymmetric
                              ? (d - g.dissipative_part).norm()
                              : (d + g.dissipative_part).norm();
  return h_defect + d_defect;
}

CMatrix choi_matrix(const CMatrix& map, Eigen::Index dim) {
  const Eigen::Index n2 = dim * dim;
  if (map.rows() != n2 || map.cols() != n2) {
    throw Error(ErrorCode::DimensionMismatch, "map must be dim^2 x dim^2");
  }
  CMatrix choi = CMatrix::Zero(n2, n2);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const CMatrix image = unvec(map.col(i + j * dim), dim);
      choi.block(i * dim, j * dim, dim, dim) = image;
    }
  }
  return choi;
}

double choi_min_eigenvalue(const CMatrix& map, Eigen::Index dim) {
  return min_hermitian_eigenvalue(choi_matrix(map, dim));
}

void write_density_csv(std::ostream& os, const std::vector<double>& times,
                       const std::vector<DensityMatrix>& states) {
  if (times.size() != states.size()) {
    throw Error(ErrorCode::DimensionMismatch, "times and states differ in length");
  }
  if (states.empty()) return;
  const Eigen::Index n = states.front().dim();
  std::vector<std::string> header{"t"};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::string idx = std::to_string(i) + std::to_string(j);
      header.push_back("re(rho_" + idx + ")");
      header.push_back("im(rho_" + idx + ")");
    }
  }
  csv::write_header(os, header);
  std::vector<double> row;
  for (std::size_t k = 0; k < states.size(); ++k) {
    require_dim(states[k].data(), n, "state");
    row.assign(1, times[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        row.push_back(states[k](i, j).real());
        row.push_back(states[k](i, j).imag());
      }
    }
    csv::write_row(os, row);
  }
}

}  // namespace timesym
