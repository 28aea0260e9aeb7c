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

#ifndef TIMESYM_QUANTUM_HPP
#define TIMESYM_QUANTUM_HPP

#include <optional>
#include <string>
#include <vector>

#include "timesym/common.hpp"

namespace timesym {

inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
/// Eigenvalues in [-kClipThreshold, 0) are treated as round-off.
inline constexpr double kClipThreshold = 1e-10;
/// Eigenvalues below -kPositivityErrorThreshold mean real positivity loss.
inline constexpr double kPositivityErrorThreshold = 1e-8;

double max_hermiticity_defect(const CMatrix& m);

/// Hermitian, unit-trace matrix. Positivity is monitored rather than
/// enforced: the time-symmetric Brownian map is not completely positive.
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix data);

  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);
  static DensityMatrix diagonal(const RVector& populations);

  Eigen::Index dim() const noexcept { return data_.rows(); }
  const CMatrix& data() const noexcept { return data_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return data_(i, j); }

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  bool positivity_violated() const noexcept {
    return min_eigenvalue_ < -kClipThreshold;
  }

 private:
  CMatrix data_;
  double min_eigenvalue_ = 0.0;
};

class HermitianOperator {
 public:
  explicit HermitianOperator(CMatrix data, std::string units = "");

  Eigen::Index dim() const noexcept { return data_.rows(); }
  const CMatrix& data() const noexcept { return data_; }
  const std::string& units() const noexcept { return units_; }

 private:
  CMatrix data_;
  std::string units_;
};

/// Basis permutation with signs, U|i> = sign[i] |perm[i]>. On a symmetric
/// momentum grid the momentum flip is the index reversal.
struct MomentumFlip {
  std::vector<Eigen::Index> permutation;
  std::vector<double> signs;

  static MomentumFlip index_reversal(Eigen::Index dim);
};

/// Anti-unitary time reversal: complex conjugation in the chosen basis,
/// followed by the optional momentum flip.
struct TimeReversalConvention {
  enum class Basis { PositionLike, EnergyEigen };

  Basis basis = Basis::PositionLike;
  std::optional<MomentumFlip> momentum_flip;

  /// Unitary part U of Theta = U K. Identity when no flip map is set.
  CMatrix unitary(Eigen::Index dim) const;
  void validate(Eigen::Index dim) const;
};

/// Theta X Theta^{-1} for an arbitrary operator.
CMatrix time_reverse_operator(const CMatrix& op, const TimeReversalConvention& conv);
DensityMatrix time_reverse_state(const DensityMatrix& rho,
                                 const TimeReversalConvention& conv);

double purity(const DensityMatrix& rho);

/// Entropy (nats) of a single-mode Gaussian state with purity xi.
double entropy_from_purity(double xi);

/// -sum lambda log lambda over eigenvalues clipped at zero.
double von_neumann_entropy(const DensityMatrix& rho);

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Gibbs state exp(-H/kT)/Z, computed in the eigenbasis of H.
DensityMatrix gibbs_state(const CMatrix& hamiltonian, double kT);

}  // namespace timesym

#endif  // TIMESYM_QUANTUM_HPP
