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

#include "timesym/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace timesym {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " must be a non-empty square matrix, got " << m.rows() << "x"
       << m.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  const CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

double max_hermiticity_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(CMatrix data) : data_(std::move(data)) {
  require_square(data_, "density matrix");
  if (!data_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "density matrix has non-finite entries");
  }
  const double herm = max_hermiticity_defect(data_);
  if (herm > kHermiticityTolerance) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (max |rho - rho^dag| = " << herm << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  const Complex tr = data_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTolerance) {
    std::ostringstream os;
    os << "density matrix trace is " << tr.real() << (tr.imag() >= 0 ? "+" : "")
       << tr.imag() << "i, expected 1";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  min_eigenvalue_ = hermitian_eigenvalues(data_).minCoeff();
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const double norm = psi.norm();
  if (psi.size() == 0 || norm == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "pure state needs a nonzero vector");
  }
  const CVector unit = psi / norm;
  CMatrix rho = unit * unit.adjoint();
  // Exact Hermiticity and trace after round-off in the outer product.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  if (dim <= 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const RVector& populations) {
  CMatrix rho = CMatrix::Zero(populations.size(), populations.size());
  rho.diagonal() = populations.cast<Complex>();
  return DensityMatrix(std::move(rho));
}

HermitianOperator::HermitianOperator(CMatrix data, std::string units)
    : data_(std::move(data)), units_(std::move(units)) {
  require_square(data_, "Hermitian operator");
  const double herm = max_hermiticity_defect(data_);
  if (herm > kHermiticityTolerance * std::max(1.0, data_.cwiseAbs().maxCoeff())) {
    std::ostringstream os;
    os << "operator is not Hermitian (max |A - A^dag| = " << herm << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

MomentumFlip MomentumFlip::index_reversal(Eigen::Index dim) {
  MomentumFlip flip;
  flip.permutation.resize(static_cast<std::size_t>(dim));
  flip.signs.assign(static_cast<std::size_t>(dim), 1.0);
  for (Eigen::Index i = 0; i < dim; ++i) {
    flip.permutation[static_cast<std::size_t>(i)] = dim - 1 - i;
  }
  return flip;
}

void TimeReversalConvention::validate(Eigen::Index dim) const {
  if (!momentum_flip) return;
  const auto& perm = momentum_flip->permutation;
  const auto& signs = momentum_flip->signs;
  if (static_cast<Eigen::Index>(perm.size()) != dim ||
      static_cast<Eigen::Index>(signs.size()) != dim) {
    std::ostringstream os;
    os << "momentum flip map has size " << perm.size() << " but the operator has dimension "
       << dim;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const auto j = perm[i];
    if (j < 0 || j >= dim) {
      throw Error(ErrorCode::InvalidArgument, "momentum flip permutation out of range");
    }
    if (perm[static_cast<std::size_t>(j)] != static_cast<Eigen::Index>(i)) {
      throw Error(ErrorCode::InvalidArgument,
                  "momentum flip permutation must be an involution");
    }
    if (std::abs(signs[i]) != 1.0 || signs[i] * signs[static_cast<std::size_t>(j)] != 1.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "momentum flip signs must be +-1 and consistent under the involution");
    }
  }
}

CMatrix TimeReversalConvention::unitary(Eigen::Index dim) const {
  validate(dim);
  if (!momentum_flip) return CMatrix::Identity(dim, dim);
  CMatrix u = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto k = static_cast<std::size_t>(i);
    u(momentum_flip->permutation[k], i) = momentum_flip->signs[k];
  }
  return u;
}

CMatrix time_reverse_operator(const CMatrix& op, const TimeReversalConvention& conv) {
  require_square(op, "operator");
  conv.validate(op.rows());
  if (!conv.momentum_flip) return op.conjugate();
  // U is a signed permutation: apply it by index shuffling so the result is
  // exact (no floating-point products).
  const auto& perm = conv.momentum_flip->permutation;
  const auto& signs = conv.momentum_flip->signs;
  const Eigen::Index n = op.rows();
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto si = static_cast<std::size_t>(i);
      const auto sj = static_cast<std::size_t>(j);
      out(perm[si], perm[sj]) = signs[si] * signs[sj] * std::conj(op(i, j));
    }
  }
  return out;
}

DensityMatrix time_reverse_state(const DensityMatrix& rho,
                                 const TimeReversalConvention& conv) {
  return DensityMatrix(time_reverse_operator(rho.data(), conv));
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.data().cwiseAbs2().sum();
}

double entropy_from_purity(double xi) {
  if (!(xi > 0.0) || xi > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "purity must lie in (0, 1], got " << xi;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  if (xi >= 1.0) return 0.0;
  const double u = 1.0 - xi;
  if (u < 1e-6) {
    // Near the pure limit: S = (u/2)(1 - log(u/2)) + O(u^2 log u).
    const double h = 0.5 * u;
    return h * (1.0 - std::log(h)) + 0.5 * h * h * (1.0 - 2.0 * std::log(h));
  }
  return u / (2.0 * xi) * std::log((1.0 + xi) / u) - std::log(2.0 * xi / (1.0 + xi));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const RVector evals = hermitian_eigenvalues(rho.data());
  if (evals.minCoeff() < -kPositivityErrorThreshold) {
    std::ostringstream os;
    os << "state has eigenvalue " << evals.minCoeff() << " below -"
       << kPositivityErrorThreshold;
    throw Error(ErrorCode::PositivityLoss, os.str());
  }
  double s = 0.0;
  for (double lambda : evals) {
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    std::ostringstream os;
    os << "trace distance between dimension " << rho.dim() << " and " << sigma.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  // The difference is Hermitian, so its singular values are |eigenvalues|.
  const RVector evals = hermitian_eigenvalues(rho.data() - sigma.data());
  return 0.5 * evals.cwiseAbs().sum();
}

DensityMatrix gibbs_state(const CMatrix& hamiltonian, double kT) {
  require_square(hamiltonian, "Hamiltonian");
  if (!(kT > 0.0)) throw Error(ErrorCode::InvalidArgument, "kT must be positive");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (hamiltonian + hamiltonian.adjoint()));
  const RVector& e = solver.eigenvalues();
  RVector w = (-(e.array() - e.minCoeff()) / kT).exp();
  w /= w.sum();
  const CMatrix& v = solver.eigenvectors();
  CMatrix rho = v * w.cast<Complex>().asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

}  // namespace timesym
