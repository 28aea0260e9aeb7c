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

#include "timesym/bath.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "timesym/quadrature.hpp"

namespace timesym {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream os;
    os << name << " must be positive and finite, got " << value;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

// x * coth(x) - 1, accurate for small x.
// Series below 0.2: the direct form loses about eight digits to cancellation
// there, which stalls adaptive quadrature at tight tolerances.
double x_coth_minus_one(double x) {
  if (std::abs(x) < 0.2) {
    const double y = x * x;
    return y * (1.0 / 3.0 +
                y * (-1.0 / 45.0 + y * (2.0 / 945.0 + y * (-1.0 / 4725.0 + y * (2.0 / 93555.0)))));
  }
  return x / std::tanh(x) - 1.0;
}

}  // namespace

void SpectralDensity::validate() const {
  require_positive(gamma, "spectral density gamma");
  require_positive(mass, "spectral density mass");
  require_positive(cutoff, "spectral density cutoff");
}

BathSpec::BathSpec(std::variant<std::vector<Oscillator>, SpectralDensity> modes, double kT,
                   Statistics statistics, double hbar)
    : modes_(std::move(modes)), kT_(kT), hbar_(hbar), statistics_(statistics) {
  if (!(kT >= 0.0) || !std::isfinite(kT)) {
    throw Error(ErrorCode::InvalidArgument, "bath temperature kT must be >= 0");
  }
  require_positive(hbar, "hbar");
}

BathSpec BathSpec::discrete(std::vector<Oscillator> oscillators, double kT,
                            Statistics statistics, double hbar) {
  if (oscillators.empty()) {
    throw Error(ErrorCode::InvalidArgument, "discrete bath needs at least one oscillator");
  }
  for (std::size_t k = 0; k < oscillators.size(); ++k) {
    const auto& osc = oscillators[k];
    if (!(osc.frequency > 0.0) || !(osc.mass > 0.0) || !std::isfinite(osc.coupling)) {
      std::ostringstream os;
      os << "oscillator " << k << " needs frequency > 0, mass > 0 and finite coupling";
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
  }
  return BathSpec(std::move(oscillators), kT, statistics, hbar);
}

BathSpec BathSpec::ohmic(SpectralDensity density, double kT, Statistics statistics,
                         double hbar) {
  density.validate();
  return BathSpec(density, kT, statistics, hbar);
}

std::span<const Oscillator> BathSpec::oscillators() const {
  if (const auto* bank = std::get_if<std::vector<Oscillator>>(&modes_)) return *bank;
  throw Error(ErrorCode::ContinuumBath,
              "operation needs a discrete oscillator bank; discretize the continuum first");
}

const SpectralDensity& BathSpec::density() const {
  if (const auto* sd = std::get_if<SpectralDensity>(&modes_)) return *sd;
  throw Error(ErrorCode::InvalidArgument, "bath is a discrete bank, not a spectral density");
}

NoisePath::NoisePath(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "noise path times and values differ in length");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i])) {
      throw Error(ErrorCode::InvalidArgument, "noise path contains non-finite samples");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "noise path times must be strictly increasing");
    }
  }
}

double memory_kernel(const BathSpec& spec, double t) {
  const double s = std::abs(t);
  if (spec.is_discrete()) {
    double k = 0.0;
    for (const auto& osc : spec.oscillators()) {
      k += osc.coupling * osc.coupling / (osc.mass * osc.frequency * osc.frequency) *
           std::cos(osc.frequency * s);
    }
    return k;
  }
  const auto& sd = spec.density();
  const double prefactor = 2.0 * sd.mass * sd.gamma / kPi;
  if (s * sd.cutoff < 1e-8) return prefactor * sd.cutoff;
  return prefactor * std::sin(sd.cutoff * s) / s;
}

double kernel_integral(const BathSpec& spec, double t) {
  if (spec.is_discrete()) {
    double acc = 0.0;
    for (const auto& osc : spec.oscillators()) {
      const double w = osc.frequency;
      acc += osc.coupling * osc.coupling / (osc.mass * w * w * w) * std::sin(w * t);
    }
    return acc;
  }
  const auto& sd = spec.density();
  return 2.0 * sd.mass * sd.gamma / kPi * quad::sine_integral(sd.cutoff * t);
}

double dissipation_constant(const BathSpec& spec) {
  if (spec.is_discrete()) {
    throw Error(ErrorCode::NonIntegrableKernel,
                "a finite oscillator bank has a quasi-periodic kernel with no convergent "
                "integral; pass a continuum spectral density");
  }
  const auto& sd = spec.density();
  return sd.mass * sd.gamma;
}

double mode_energy_factor(const BathSpec& spec, double omega) {
  if (spec.statistics() == Statistics::Classical) return 2.0 * spec.kT();
  const double hw = spec.hbar() * omega;
  if (spec.kT() == 0.0) return hw;
  const double x = hw / (2.0 * spec.kT());
  // hbar w coth(x) = 2kT * x coth(x)
  return 2.0 * spec.kT() * (1.0 + x_coth_minus_one(x));
}

double autocorrelation(const BathSpec& spec, double dt) {
  const double s = std::abs(dt);
  if (spec.is_discrete()) {
    double c = 0.0;
    for (const auto& osc : spec.oscillators()) {
      const double w = osc.frequency;
      c += osc.coupling * osc.coupling / (osc.mass * w * w) * mode_energy_factor(spec, w) *
           std::cos(w * s);
    }
    return c;
  }

  const auto& sd = spec.density();
  const double lambda = sd.cutoff;
  const double gm = sd.gamma * sd.mass;
  const double hbar = spec.hbar();
  const double kT = spec.kT();

  // int_0^Lambda cos(w s) dw and int_0^Lambda w cos(w s) dw in closed form.
  const double ls = lambda * s;
  const double cos_int = ls < 1e-8 ? lambda : std::sin(ls) / s;
  double w_cos_int;
  if (ls < 1e-4) {
    w_cos_int = lambda * lambda * (0.5 - ls * ls / 8.0);
  } else {
    w_cos_int = lambda * std::sin(ls) / s + (std::cos(ls) - 1.0) / (s * s);
  }

  if (spec.statistics() == Statistics::Classical) {
    return 4.0 * gm * kT / kPi * cos_int;
  }
  if (kT == 0.0) return 2.0 * gm * hbar / kPi * w_cos_int;

  // w coth(hbar w / 2kT) = (2kT/hbar) (1 + [x coth x - 1]) with x = hbar w / 2kT.
  const double remainder = quad::integrate_oscillatory(
      [&](double w) {
        return x_coth_minus_one(hbar * w / (2.0 * kT)) * std::cos(w * s);
      },
      0.0, lambda, s);
  return 4.0 * gm * kT / kPi * (cos_int + remainder);
}

BathState sample_thermal_state(const BathSpec& spec, std::uint64_t seed) {
  const auto bank = spec.oscillators();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  BathState state;
  state.q.resize(bank.size());
  state.p.resize(bank.size());
  for (std::size_t k = 0; k < bank.size(); ++k) {
    const auto& osc = bank[k];
    const double half_energy = 0.5 * mode_energy_factor(spec, osc.frequency);
    const double sd_q = std::sqrt(half_energy / (osc.mass * osc.frequency * osc.frequency));
    const double sd_p = std::sqrt(half_energy * osc.mass);
    state.q[k] = sd_q * normal(rng);
    state.p[k] = sd_p * normal(rng);
  }
  return state;
}

double stochastic_force(const BathSpec& spec, const BathState& state, double t) {
  const auto bank = spec.oscillators();
  if (state.q.size() != bank.size() || state.p.size() != bank.size()) {
    throw Error(ErrorCode::DimensionMismatch, "bath state size does not match the bank");
  }
  double f = 0.0;
  for (std::size_t k = 0; k < bank.size(); ++k) {
    const auto& osc = bank[k];
    const double w = osc.frequency;
    f += osc.coupling *
         (state.q[k] * std::cos(w * t) + state.p[k] / (osc.mass * w) * std::sin(w * t));
  }
  return f;
}

double stochastic_force_integral(const BathSpec& spec, const BathState& state, double t) {
  const auto bank = spec.oscillators();
  if (state.q.size() != bank.size() || state.p.size() != bank.size()) {
    throw Error(ErrorCode::DimensionMismatch, "bath state size does not match the bank");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < bank.size(); ++k) {
    const auto& osc = bank[k];
    const double w = osc.frequency;
    acc += osc.coupling * (state.q[k] * std::sin(w * t) / w +
                           state.p[k] / (osc.mass * w * w) * (1.0 - std::cos(w * t)));
  }
  return acc;
}

NoisePath sample_noise(const BathSpec& spec, std::span<const double> grid,
                       std::uint64_t seed) {
  const BathState state = sample_thermal_state(spec, seed);
  std::vector<double> times(grid.begin(), grid.end());
  std::vector<double> values(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    values[i] = stochastic_force(spec, state, times[i]);
  }
  return NoisePath(std::move(times), std::move(values));
}

BathSpec discretize_ohmic(const BathSpec& continuum, int n_modes) {
  if (n_modes < 2) {
    throw Error(ErrorCode::InvalidArgument, "discretize_ohmic needs n_modes >= 2");
  }
  const auto& sd = continuum.density();
  const double dw = sd.cutoff / n_modes;
  std::vector<Oscillator> bank(static_cast<std::size_t>(n_modes));
  for (int k = 1; k <= n_modes; ++k) {
    const double w = k * dw;
    const double g2 = 2.0 * sd.mass * sd.gamma / kPi * w * w * dw;
    bank[static_cast<std::size_t>(k - 1)] = Oscillator{w, 1.0, std::sqrt(g2)};
  }
  return BathSpec::discrete(std::move(bank), continuum.kT(), continuum.statistics(),
                            continuum.hbar());
}

}  // namespace timesym
