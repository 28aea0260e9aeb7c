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

#ifndef TIMESYM_LANGEVIN_HPP
#define TIMESYM_LANGEVIN_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "timesym/bath.hpp"
#include "timesym/common.hpp"
#include "timesym/potential.hpp"

namespace timesym {

/// Time-stamped (t, Q, P) samples. Times may be negative.
struct TrajectorySeries {
  std::vector<double> t;
  std::vector<double> Q;
  std::vector<double> P;

  std::size_t size() const noexcept { return t.size(); }
  void validate() const;
  /// Header `t,Q,P`, 17 significant digits.
  void write_csv(std::ostream& os) const;
};

/// System plus every bath coordinate.
struct FullState {
  double Q = 0.0;
  double P = 0.0;
  BathState bath;
};

/// Flips every momentum.
FullState momentum_flip(FullState state);

/// Total energy of H_S + H_B + H_SB including the counter-term.
double total_energy(const SystemSpec& sys, const BathSpec& bath, const FullState& state);

/// One step of a fourth-order symplectic composition of the symmetric split
/// (half drift of Q, exact flow of the bath plus coupling at frozen Q, half
/// drift). Any sign of dt.
FullState exact_step(const SystemSpec& sys, const BathSpec& bath, const FullState& state,
                     double dt);

/// Full system+bath Hamiltonian dynamics on the grid, both directions from t = 0.
std::vector<FullState> integrate_exact_states(const SystemSpec& sys, const BathSpec& bath,
                                              const FullState& init, const TimeGrid& grid);
TrajectorySeries integrate_exact(const SystemSpec& sys, const BathSpec& bath,
                                 const FullState& init, const TimeGrid& grid);

/// The force term that enters the GLE for the coupling +g_k q_k Q. It is the
/// stochastic force evaluated with the sign of the bath state reversed;
/// statistically the two are identical.
NoisePath coupled_noise(const BathSpec& bath, const BathState& state, const TimeGrid& grid);

/// Generalized Langevin equation
///   M Q'' + V'(Q) + int_0^t k(t - s) Q'(s) ds + k(t) Q(0) = f(t)
/// with trapezoidal convolution over the full history. `noise` must be
/// sampled on `grid`.
TrajectorySeries integrate_gle(const SystemSpec& sys, const BathSpec& bath, double q0,
                               double p0, const NoisePath& noise, const TimeGrid& grid);
/// Same, with f(t) from thermal initial conditions drawn with `seed`.
TrajectorySeries integrate_gle(const SystemSpec& sys, const BathSpec& bath, double q0,
                               double p0, std::uint64_t seed, const TimeGrid& grid);

/// Gaussian white noise with <f(t) f(t')> = 2 (gamma M) kT delta(t - t').
struct WhiteNoise {
  double kT = 1.0;
  std::uint64_t seed = 0;
};

/// No noise, a fixed realization on the grid, or white noise.
using MarkovNoise = std::variant<std::monostate, NoisePath, WhiteNoise>;

/// M Q'' + V'(Q) + sgn(t) gamma P = f(t), gamma = gammaM / M, integrated with
/// stochastic Heun away from t = 0 in each direction. `Dynamics::Standard`
/// drops the sgn(t) factor.
TrajectorySeries integrate_markovian(const SystemSpec& sys, double gammaM,
                                     const MarkovNoise& noise, double q0, double p0,
                                     const TimeGrid& grid,
                                     Dynamics dynamics = Dynamics::TimeSymmetric);

/// Max residual of the Markovian equation evaluated on the trajectory
/// reflected about t = a: Q_a(t) = Q(2a - t), P_a(t) = -P(2a - t),
/// f_a(t) = f(2a - t). Windows touching t = 0 are skipped.
double reflection_residual(const TrajectorySeries& traj, const SystemSpec& sys,
                           double gammaM, const NoisePath* noise, double a,
                           Dynamics dynamics = Dynamics::TimeSymmetric);

/// Reflection about the origin. Requires a grid symmetric about 0.
double check_time_reversal_residual(const TrajectorySeries& traj, const SystemSpec& sys,
                                    double gammaM, const NoisePath* noise,
                                    Dynamics dynamics = Dynamics::TimeSymmetric);

/// Residual of the integrated GLE on an exact trajectory reflected about
/// t = a. The reflected motion must solve the GLE anchored at a with the
/// time-reversed bath state at a; `reverse_bath = false` keeps the bath
/// momenta as they are (negative control).
double gle_reflection_residual(const SystemSpec& sys, const BathSpec& bath,
                               const FullState& init, double a, double half_span, double dt,
                               bool reverse_bath = true);

struct TranslationTest {
  double a = 0.0;
  double residual_at_a = 0.0;
  double residual_at_origin = 0.0;
  bool broken = false;  ///< residual_at_a > 10 * residual_at_origin
};

/// Noiseless Markovian trajectory through (q0, p0) on [-half_span, half_span],
/// reflected about a and about 0.
TranslationTest check_time_translation_breaking(const SystemSpec& sys, double gammaM,
                                                double a, double q0 = 0.0, double p0 = 1.0,
                                                double half_span = 5.0, double dt = 1e-3);

}  // namespace timesym

#endif  // TIMESYM_LANGEVIN_HPP
