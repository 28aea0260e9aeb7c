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

#ifndef TIMESYM_BATH_HPP
#define TIMESYM_BATH_HPP

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "timesym/common.hpp"

namespace timesym {

enum class Statistics { Classical, Quantum };

/// One bath oscillator: frequency omega_k, mass m_k and bilinear coupling g_k.
struct Oscillator {
  double frequency = 1.0;
  double mass = 1.0;
  double coupling = 0.0;
};

/// Linear (Ohmic) spectral density with a sharp cutoff. `gamma` is the
/// dissipation rate and `mass` the system mass M, so that the kernel
/// integrates to M * gamma.
struct SpectralDensity {
  double gamma = 1.0;
  double mass = 1.0;
  double cutoff = 100.0;

  void validate() const;
};

/// Harmonic bath: either an explicit oscillator bank or a continuum density.
class BathSpec {
 public:
  static BathSpec discrete(std::vector<Oscillator> oscillators, double kT,
                           Statistics statistics = Statistics::Classical, double hbar = 1.0);
  static BathSpec ohmic(SpectralDensity density, double kT,
                        Statistics statistics = Statistics::Classical, double hbar = 1.0);

  bool is_discrete() const noexcept {
    return std::holds_alternative<std::vector<Oscillator>>(modes_);
  }
  /// Throws ContinuumBath for Ohmic specs.
  std::span<const Oscillator> oscillators() const;
  /// Throws InvalidArgument for discrete specs.
  const SpectralDensity& density() const;

  double kT() const noexcept { return kT_; }
  double hbar() const noexcept { return hbar_; }
  Statistics statistics() const noexcept { return statistics_; }

 private:
  BathSpec(std::variant<std::vector<Oscillator>, SpectralDensity> modes, double kT,
           Statistics statistics, double hbar);

  std::variant<std::vector<Oscillator>, SpectralDensity> modes_;
  double kT_ = 0.0;
  double hbar_ = 1.0;
  Statistics statistics_ = Statistics::Classical;
};

/// Initial bath coordinates (q_k(0), p_k(0)).
struct BathState {
  std::vector<double> q;
  std::vector<double> p;
};

/// A realization of the stochastic force on a strictly increasing grid.
class NoisePath {
 public:
  NoisePath(std::vector<double> times, std::vector<double> values);

  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return times_.size(); }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// k(t). Even in t by construction.
double memory_kernel(const BathSpec& spec, double t);

/// int_0^t k(s) ds (odd in t).
double kernel_integral(const BathSpec& spec, double t);

/// M * gamma = int_0^inf k(t) dt. Discrete banks have a quasi-periodic kernel
/// whose integral does not converge; they raise NonIntegrableKernel.
double dissipation_constant(const BathSpec& spec);

/// hbar*omega*coth(hbar*omega / 2kT), or 2kT for classical statistics.
double mode_energy_factor(const BathSpec& spec, double omega);

/// Symmetrized correlation <{f(t), f(t')}> as a function of dt = t - t'.
double autocorrelation(const BathSpec& spec, double dt);

/// Draws thermal initial conditions for a discrete bank. Classical
/// statistics use Var q = kT/(m w^2) and Var p = m kT; quantum statistics
/// scale both by (hbar w / 2kT) coth(hbar w / 2kT).
BathState sample_thermal_state(const BathSpec& spec, std::uint64_t seed);

/// f(t) = sum_k g_k q_k(0) cos(w_k t) + g_k p_k(0)/(m_k w_k) sin(w_k t),
/// valid for every t including t < 0.
double stochastic_force(const BathSpec& spec, const BathState& state, double t);

/// int_0^t f(s) ds in closed form.
double stochastic_force_integral(const BathSpec& spec, const BathState& state, double t);

/// Samples thermal initial conditions with `seed` and evaluates f on `grid`.
NoisePath sample_noise(const BathSpec& spec, std::span<const double> grid,
                       std::uint64_t seed);

/// Linear-spacing discretization: w_k = k * (cutoff / n_modes), m_k = 1,
/// g_k^2 = (2 M gamma / pi) m_k w_k^2 dw. Keeps temperature and statistics.
BathSpec discretize_ohmic(const BathSpec& continuum, int n_modes);

}  // namespace timesym

#endif  // TIMESYM_BATH_HPP
