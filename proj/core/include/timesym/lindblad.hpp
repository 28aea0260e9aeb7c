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

#ifndef TIMESYM_LINDBLAD_HPP
#define TIMESYM_LINDBLAD_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "timesym/common.hpp"
#include "timesym/quantum.hpp"

namespace timesym {

/// Coupling operators split by Bohr frequency: A_alpha(w) connects energy
/// eps' to eps = eps' - hbar w, so w > 0 lowers the energy.
struct EigenoperatorSet {
  Eigen::Index dim = 0;
  std::vector<double> frequencies;               ///< sorted, distinct
  std::vector<std::vector<CMatrix>> operators;   ///< [alpha][frequency index]

  std::size_t coupling_count() const noexcept { return operators.size(); }
  /// Index of the frequency within `tol`, or nullopt.
  std::optional<std::size_t> find(double omega, double tol) const;
  /// max_alpha || sum_w A_alpha(w) - A_alpha ||.
  double completeness_defect(const std::vector<HermitianOperator>& couplings) const;
  /// max || A_alpha(-w) - A_alpha(w)^dagger ||.
  double conjugation_defect() const;
};

/// `freq_tol` defaults to 1e-9 ||H||. Distinct Bohr frequencies closer than
/// it raise AmbiguousSecularGrouping.
EigenoperatorSet eigenoperator_decompose(const HermitianOperator& hamiltonian,
                                         const std::vector<HermitianOperator>& couplings,
                                         std::optional<double> freq_tol = std::nullopt,
                                         double hbar = 1.0);

/// gamma_ab(w) and eta_ab(w) on the Bohr frequencies of a decomposition.
class SpectralFunctionTable {
 public:
  explicit SpectralFunctionTable(std::size_t coupling_count);

  /// Inserts or replaces the entry at `omega`. gamma must be PSD to 1e-10,
  /// eta Hermitian; an empty eta means zero.
  void set(double omega, const CMatrix& gamma, const CMatrix& eta = CMatrix());

  /// Thermal bosonic bath, diagonal in alpha:
  /// gamma(w) = kappa w / (1 - exp(-hbar w / kT)) exp(-|w| / cutoff),
  /// gamma(0) = kappa kT / hbar. Satisfies KMS exactly.
  static SpectralFunctionTable thermal_bosonic(const EigenoperatorSet& eig, double kappa,
                                               double kT, double cutoff, double hbar = 1.0);

  std::size_t coupling_count() const noexcept { return couplings_; }
  std::size_t size() const noexcept { return omegas_.size(); }
  const CMatrix& gamma(double omega, double tol) const;
  const CMatrix& eta(double omega, double tol) const;

  /// max |gamma_ab(-w) - exp(-hbar w / kT) gamma_ba(w)^*| over stored pairs.
  double kms_defect(double kT, double hbar = 1.0, double tol = 1e-9) const;

 private:
  std::size_t index(double omega, double tol) const;

  std::size_t couplings_;
  std::vector<double> omegas_;
  std::vector<CMatrix> gammas_;
  std::vector<CMatrix> etas_;
};

/// Stationary bath correlation C_ab(s) for one (alpha, beta) pair.
using CorrelationFunction = std::function<Complex(double)>;

/// Gamma_ab(w, t) = int_0^t exp(i w s) C_ab(s) ds.
Complex bath_gamma_of_t(const CorrelationFunction& corr, double omega, double t);

/// sgn(t) int_{-|t|}^{|t|} exp(i w s) C(s) ds, which equals
/// Gamma_ab(w, t) + Gamma_ba(w, t)^* for stationary correlations.
Complex two_sided_transform(const CorrelationFunction& corr, double omega, double t);

/// Vectorized generator with column stacking, vec(A X B) = (B^T kron A) vec(X).
/// The Hamiltonian part holds -(i/hbar)[H, .]; sgn(t) multiplies only the
/// dissipative part.
struct Superoperator {
  Eigen::Index dim = 0;
  CMatrix hamiltonian_part;
  CMatrix dissipative_part;

  void validate() const;
  /// Generator times t: H t + D |t| (time-symmetric) or (H + D) t.
  CMatrix exponent(double t, Dynamics dynamics = Dynamics::TimeSymmetric) const;
  /// Max column-sum defect of the trace functional applied to each part.
  double trace_annihilation_defect() const;
};

Superoperator unitary_generator(const HermitianOperator& hamiltonian, double hbar = 1.0);

/// H-part from H_S plus the Lamb shift (1/hbar) sum eta_ab A_a^dag A_b;
/// D-part (1/hbar^2) sum gamma_ab (A_b . A_a^dag - {A_a^dag A_b, .}/2).
Superoperator build_generator(const EigenoperatorSet& eig, const SpectralFunctionTable& spec,
                              const HermitianOperator& hamiltonian, double hbar = 1.0);

CMatrix vec(const CMatrix& m);
CMatrix unvec(const CMatrix& v, Eigen::Index dim);

/// exp(H t + D |t|), or exp((H + D) t) for standard dynamics.
CMatrix propagator(const Superoperator& g, double t,
                   Dynamics dynamics = Dynamics::TimeSymmetric);

DensityMatrix propagate(const Superoperator& g, const DensityMatrix& rho0, double t,
                        Dynamics dynamics = Dynamics::TimeSymmetric);

/// Null vector of the forward generator normalized to unit trace.
DensityMatrix steady_state(const Superoperator& g);

struct SemigroupReport {
  double same_sign_defect = 0.0;   ///< max ||E(t1 + t2) - E(t1) E(t2)||, same signs
  double mixed_sign_defect = 0.0;  ///< max ||E(-t) E(t) - I||
  std::size_t same_sign_pairs = 0;
};

/// Frobenius norms. Pairs of opposite sign contribute to the mixed report
/// through E(-|t1|) E(|t1|).
SemigroupReport check_two_sided_semigroup(const Superoperator& g,
                                          const std::vector<std::pair<double, double>>& samples,
                                          Dynamics dynamics = Dynamics::TimeSymmetric);

/// Theta-conjugated superoperator S conj(L) S^-1 with S = conj(U) kron U.
CMatrix time_reverse_superoperator(const CMatrix& l, const TimeReversalConvention& conv,
                                   Eigen::Index dim);

/// Time-symmetric dynamics need Theta H-part Theta^-1 = -H-part (the i in
/// the generator flips) and Theta D-part Theta^-1 = D-part; the standard
/// equation would instead need the dissipator to flip too.
double check_generator_time_reversal(const Superoperator& g, const TimeReversalConvention& conv,
                                     Dynamics dynamics = Dynamics::TimeSymmetric);

/// Choi matrix sum_ij |i><j| kron E(|i><j|) of a vectorized map.
CMatrix choi_matrix(const CMatrix& map, Eigen::Index dim);
double choi_min_eigenvalue(const CMatrix& map, Eigen::Index dim);

/// Header `t,re(rho_00),im(rho_00),...` in row-major (i, j) order.
void write_density_csv(std::ostream& os, const std::vector<double>& times,
                       const std::vector<DensityMatrix>& states);

}  // namespace timesym

#endif  // TIMESYM_LINDBLAD_HPP
