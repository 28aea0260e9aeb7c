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

#ifndef TIMESYM_PAULI_HPP
#define TIMESYM_PAULI_HPP

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "timesym/common.hpp"
#include "timesym/lindblad.hpp"
#include "timesym/quantum.hpp"

namespace timesym {

/// W(n, m) is the rate of the jump m -> n; the diagonal is ignored. All
/// constants, including 1/hbar^2, are folded into W.
struct RateMatrix {
  RMatrix W;
  RVector energies;
  /// Optional (energy shell, index within shell) labels for the degenerate form.
  std::vector<std::pair<double, int>> labels;

  Eigen::Index size() const noexcept { return W.rows(); }
  void validate() const;
  /// K(n, m) = W(n, m) off the diagonal, K(n, n) = -sum_m W(m, n).
  RMatrix generator() const;
};

/// Point on the probability simplex (entries >= -1e-12, sum 1 to 1e-12).
class PopulationVector {
 public:
  explicit PopulationVector(RVector p);
  static PopulationVector uniform(Eigen::Index n);

  const RVector& values() const noexcept { return p_; }
  Eigen::Index size() const noexcept { return p_.size(); }
  double operator[](Eigen::Index i) const { return p_(i); }

 private:
  RVector p_;
};

/// Rates of the secular Lindblad generator in the energy eigenbasis,
/// W(m <- n) = (1/hbar^2) sum_ab gamma_ab((e_n - e_m)/hbar) <n|A_a|m><m|A_b|n>.
/// Eigenvalues are sorted ascending; degenerate spectra raise
/// DegenerateSpectrum.
RateMatrix rates_from_lindblad(const EigenoperatorSet& eig, const SpectralFunctionTable& spec,
                               const HermitianOperator& hamiltonian,
                               const std::vector<HermitianOperator>& couplings,
                               double hbar = 1.0);

/// Degenerate shell: W_kk' = (2 lambda^2 / hbar) |<e,k|H_SB|e,k'>|^2 eta(e).
RateMatrix golden_rule_rates(const CMatrix& shell_elements, double lambda,
                             double density_of_states, double shell_energy = 0.0,
                             double hbar = 1.0);

/// exp(|t| K) p0, or exp(t K) p0 for standard dynamics (which may leave the
/// simplex for t < 0).
RVector evolve_populations(const RateMatrix& w, const RVector& p0, double t,
                           Dynamics dynamics = Dynamics::TimeSymmetric);
PopulationVector propagate_populations(const RateMatrix& w, const PopulationVector& p0,
                                       double t);

struct StationaryDistribution {
  /// Closed communicating classes of the jump graph, each sorted.
  std::vector<std::vector<Eigen::Index>> closed_classes;
  /// One stationary vector per closed class, supported on that class.
  std::vector<PopulationVector> per_class;

  bool unique() const noexcept { return per_class.size() == 1; }
  /// The stationary vector when unique; throws otherwise.
  const PopulationVector& distribution() const;
};

StationaryDistribution stationary_distribution(const RateMatrix& w);

/// D(p || q) = sum p log(p / q); infinite when supp p is not inside supp q.
double relative_entropy(const RVector& p, const RVector& q);

/// max ||exp(|t1 + t2| K) - exp(|t1| K) exp(|t2| K)|| over same-sign pairs.
double population_semigroup_defect(const RateMatrix& w,
                                   const std::vector<std::pair<double, double>>& samples);

/// Header `t,p_1,...,p_n`.
void write_population_csv(std::ostream& os, const std::vector<double>& times,
                          const std::vector<RVector>& populations);

}  // namespace timesym

#endif  // TIMESYM_PAULI_HPP
