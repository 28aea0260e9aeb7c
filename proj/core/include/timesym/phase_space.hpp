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

#ifndef TIMESYM_PHASE_SPACE_HPP
#define TIMESYM_PHASE_SPACE_HPP

#include <iosfwd>
#include <vector>

#include "timesym/brownian.hpp"
#include "timesym/common.hpp"
#include "timesym/potential.hpp"

namespace timesym {

/// Real field W(x, p) on [-x_max, x_max] x [-p_max, p_max], nodes at both
/// ends, stored x-major.
class PhaseSpaceGrid {
 public:
  PhaseSpaceGrid(double x_max, double p_max, int nx, int np);

  /// Wigner function of a Gaussian state with the given moments.
  static PhaseSpaceGrid gaussian(double x_max, double p_max, int nx, int np,
                                 const GaussianState& state);

  int nx() const noexcept { return nx_; }
  int np() const noexcept { return np_; }
  double x_max() const noexcept { return x_max_; }
  double p_max() const noexcept { return p_max_; }
  double dx() const noexcept { return 2.0 * x_max_ / (nx_ - 1); }
  double dp() const noexcept { return 2.0 * p_max_ / (np_ - 1); }
  double x(int i) const noexcept { return -x_max_ + i * dx(); }
  double p(int j) const noexcept { return -p_max_ + j * dp(); }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  double& at(int i, int j) { return w_[static_cast<std::size_t>(i) * np_ + j]; }
  double at(int i, int j) const { return w_[static_cast<std::size_t>(i) * np_ + j]; }
  std::vector<double>& values() noexcept { return w_; }
  const std::vector<double>& values() const noexcept { return w_; }

  /// Trapezoidal integral of W.
  double total_mass() const;
  /// Largest |W| on the outer frame.
  double max_boundary() const;
  /// W(x, p) -> W(x, -p); exact on the symmetric p grid.
  PhaseSpaceGrid momentum_flipped() const;
  /// Sum |W - other| dx dp. Grids must match.
  double l1_distance(const PhaseSpaceGrid& other) const;

  /// Header `x,p,W`.
  void write_csv(std::ostream& os) const;
  /// Magic "TSWG", uint32 version, uint64 nx, np, float64 x_max, p_max,
  /// time, then nx*np float64 values; everything little-endian.
  void write_binary(std::ostream& os) const;
  static PhaseSpaceGrid read_binary(std::istream& is);

 private:
  double x_max_;
  double p_max_;
  int nx_;
  int np_;
  double time_ = 0.0;
  std::vector<double> w_;
};

enum class PdeMode { QuantumWigner, ClassicalFP };
enum class Direction { Forward, Backward };

/// Momentum diffusion of the Fokker-Planck part: 2 gamma M kT as in the
/// time-symmetric Brownian equation, or gamma M kT as in the usual
/// Caldeira-Leggett form (which thermalizes to var_p = M kT).
enum class DiffusionConvention { Printed, StandardCaldeiraLeggett };

struct PdeParams {
  double mass = 1.0;
  double gamma = 1.0;
  double kT = 1.0;
  double hbar = 1.0;
  Potential potential = FreePotential{};
  PdeMode mode = PdeMode::QuantumWigner;
  double dt = 1e-3;
  double t_final = 1.0;
  Direction direction = Direction::Forward;
  /// Highest term of the odd-derivative quantum series, 1..3.
  int n_max = 1;
  DiffusionConvention diffusion = DiffusionConvention::Printed;
  Dynamics dynamics = Dynamics::TimeSymmetric;

  void validate() const;
  double diffusion_coefficient() const noexcept;
};

/// Largest step allowed by
/// 0.5 min(dx M / p_max, dp / (|V'|max + gamma p_max), dp^2 / 2D, quantum term).
double max_stable_dt(const PhaseSpaceGrid& grid, const PdeParams& params);

/// Evolves from grid.time() by t_final in the chosen direction with Strang
/// splitting (half x-advection, full momentum operator, half x-advection),
/// each sub-flow one RK4 step on conservative central differences. The
/// backward branch integrates the mapped equation in tau = -t, which is
/// diffusive for time-symmetric dynamics.
PhaseSpaceGrid evolve(const PhaseSpaceGrid& grid, const PdeParams& params);

/// Trapezoidal means, variances and symmetrized covariance.
GaussianState moments(const PhaseSpaceGrid& grid);

struct PhaseSpaceReversal {
  double defect = 0.0;                   ///< L1 defect on the given grid
  double discretization_estimate = 0.0;  ///< L1 gap between the grid and its refinement
  double refined_defect = 0.0;           ///< same defect on the refined grid
  bool passed = false;                   ///< defect < 2 * estimate (+ round-off floor)
};

/// Time-symmetric dynamics: L1 || E(-T) Theta W0 - Theta E(T) W0 ||.
/// Standard dynamics (backward branch ill-posed) use the echo
/// L1 || E(T) Theta E(T) W0 - Theta W0 ||. W0 is the Wigner function of
/// `initial`; the refinement uses 2n-1 nodes per axis and a step within its
/// stability limit.
PhaseSpaceReversal check_phase_space_time_reversal(const GaussianState& initial,
                                                   double x_max, double p_max, int nx,
                                                   int np, const PdeParams& params);

}  // namespace timesym

#endif  // TIMESYM_PHASE_SPACE_HPP
