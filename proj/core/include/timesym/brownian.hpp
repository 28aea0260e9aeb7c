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

#ifndef TIMESYM_BROWNIAN_HPP
#define TIMESYM_BROWNIAN_HPP

#include <iosfwd>
#include <vector>

#include "timesym/bath.hpp"
#include "timesym/common.hpp"
#include "timesym/potential.hpp"

namespace timesym {

/// First and second moments of a single-mode Gaussian state. `cov_qp` is the
/// symmetrized covariance <{Q, P}>/2 - <Q><P>.
struct GaussianState {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.5;
  double var_p = 0.5;
  double cov_qp = 0.0;

  double determinant() const noexcept { return var_q * var_p - cov_qp * cov_qp; }
  /// hbar / (2 sqrt(det)).
  double purity(double hbar) const;
  /// det >= hbar^2/4 - 1e-9. The two-sided Brownian map may violate it.
  bool satisfies_uncertainty(double hbar) const noexcept;
};

/// Brownian particle parameters. `sigma` is the width of the initial
/// wavefunction exp(-x^2 / 2 sigma^2); the potential is free or harmonic.
struct BrownianParams {
  double mass = 1.0;
  double gamma = 1.0;
  double kT = 1.0;
  double hbar = 1.0;
  double sigma = 1.0;
  Potential potential = FreePotential{};

  /// Throws InvalidArgument or UnsupportedPotential.
  void validate() const;
  /// Pure Gaussian at t = 0: var_q = sigma^2/2, var_p = hbar^2/(2 sigma^2).
  GaussianState initial_state() const;
  /// Momentum diffusion constant 2 gamma M kT of the Markovian equation.
  double diffusion() const noexcept { return 2.0 * gamma * mass * kT; }
};

/// Gamma(t) = int_0^t <{f(t), f(t')}> dt'. Odd in t; tends to
/// sgn(t) * 2 gamma M kT for an Ohmic bath at high temperature.
double gamma_coefficient(const BathSpec& bath, double t);

enum class FrictionModel {
  MarkovSgn,           ///< sgn(t) on friction and diffusion, D = 2 gamma M kT
  TimeDependentGamma,  ///< sgn(t) friction, diffusion Gamma(t) from a bath
};

/// Propagates the moment equations of the Brownian master equation from
/// t_from to t_to. MarkovSgn is exact (matrix exponential per sign branch);
/// TimeDependentGamma uses RK4 and needs `bath`. `Dynamics::Standard` drops
/// every sgn(t).
GaussianState propagate_moments(const BrownianParams& params, FrictionModel model,
                                const GaussianState& state, double t_from, double t_to,
                                const BathSpec* bath = nullptr,
                                Dynamics dynamics = Dynamics::TimeSymmetric);

/// Coefficients of the free-particle density matrix in the momentum
/// representation, rho ~ exp(-(q + sgn(t) A p)^2 / N - B p^2).
struct ClosedFormCoefficients {
  double N = 0.0;
  Complex A{0.0, 0.0};
  double B = 0.0;
};

enum class ClosedFormVariant {
  /// Thermal terms of N and A consistent with the moment equations.
  MasterEquation,
  /// Coefficients verbatim; the thermal parts of N and A are then a factor
  /// 4 smaller than the master equation implies.
  Printed,
};

ClosedFormCoefficients closed_form_coefficients(
    const BrownianParams& params, double t,
    ClosedFormVariant variant = ClosedFormVariant::MasterEquation);

/// Free particle only. Converts N, A, B into moments:
/// var_p = hbar^2 N / 2, cov_qp = sgn(t) hbar Im A, var_q = 2 B.
GaussianState analytic_solution(const BrownianParams& params, double t,
                                ClosedFormVariant variant = ClosedFormVariant::MasterEquation);

struct EntropySample {
  double t = 0.0;
  double entropy = 0.0;
  double purity = 1.0;
  GaussianState state;
};

struct EntropyCurve {
  std::vector<EntropySample> samples;
  /// Header `t,S_vN,purity,varQ,varP,covQP`.
  void write_csv(std::ostream& os) const;
};

/// Entropy on a grid symmetric about 0. Free particles use the closed form,
/// harmonic ones the moment equations.
EntropyCurve entropy_curve(const BrownianParams& params, const TimeGrid& grid,
                           ClosedFormVariant variant = ClosedFormVariant::MasterEquation);

}  // namespace timesym

#endif  // TIMESYM_BROWNIAN_HPP
