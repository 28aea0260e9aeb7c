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

#include "timesym/brownian.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "timesym/csv.hpp"
#include "timesym/quadrature.hpp"
#include "timesym/quantum.hpp"

namespace timesym {

namespace {

constexpr double kPi = std::numbers::pi;

double stiffness(const BrownianParams& p) {
  if (const auto* h = std::get_if<HarmonicPotential>(&p.potential)) {
    return p.mass * h->omega0 * h->omega0;
  }
  return 0.0;
}

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

Vec5 pack(const GaussianState& s) {
  Vec5 y;
  y << s.mean_q, s.mean_p, s.var_q, s.var_p, s.cov_qp;
  return y;
}

GaussianState unpack(const Vec5& y) {
  return GaussianState{y(0), y(1), y(2), y(3), y(4)};
}

// dy/dt for the moment system with friction sign `s` and diffusion source
// `source` entering d varP/dt as +2 * source.
Vec5 moment_rhs(const BrownianParams& p, double k, double s, double source, const Vec5& y) {
  const double m = p.mass;
  const double g = s * p.gamma;
  Vec5 d;
  d(0) = y(1) / m;
  d(1) = -k * y(0) - g * y(1);
  d(2) = 2.0 * y(4) / m;
  d(3) = -2.0 * k * y(4) - 2.0 * g * y(3) + 2.0 * source;
  d(4) = y(3) / m - k * y(2) - g * y(4);
  return d;
}

// Exact flow over dt of the constant-coefficient system as an augmented
// 6x6 matrix exponential.
Vec5 exact_segment(const BrownianParams& p, double k, double s, double source, const Vec5& y,
                   double dt) {
  Mat6 g = Mat6::Zero();
  for (int j = 0; j < 5; ++j) {
    Vec5 e = Vec5::Zero();
    e(j) = 1.0;
    g.block<5, 1>(0, j) = moment_rhs(p, k, s, 0.0, e);
  }
  g(3, 5) = 2.0 * source;
  const Mat6 flow = (g * dt).exp();
  Eigen::Matrix<double, 6, 1> aug;
  aug << y, 1.0;
  return (flow * aug).head<5>();
}

double rk4_step_limit(const BathSpec& bath) {
  if (!bath.is_discrete()) return std::min(1e-2, 0.1 / bath.density().cutoff);
  double w_max = 0.0;
  for (const auto& o : bath.oscillators()) w_max = std::max(w_max, o.frequency);
  return std::min(1e-2, 0.1 / w_max);
}

// 2x - 3 + 4 e^{-x} - e^{-2x}, which cancels to O(x^3) for small x.
double spreading(double x) {
  if (x < 1e-3) {
    const double x3 = x * x * x;
    return x3 * (2.0 / 3.0 - x / 2.0 + 7.0 * x * x / 30.0 - x * x * x / 12.0);
  }
  return 2.0 * x - 3.0 + 4.0 * std::exp(-x) - std::exp(-2.0 * x);
}

}  // namespace

double GaussianState::purity(double hbar) const {
  const double det = determinant();
  if (!(det > 0.0)) {
    std::ostringstream os;
    os << "Gaussian covariance has non-positive determinant " << det;
    throw Error(ErrorCode::PositivityLoss, os.str());
  }
  return hbar / (2.0 * std::sqrt(det));
}

bool GaussianState::satisfies_uncertainty(double hbar) const noexcept {
  return determinant() >= 0.25 * hbar * hbar - 1e-9;
}

void BrownianParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be positive");
    }
  };
  positive(mass, "mass");
  positive(hbar, "hbar");
  positive(sigma, "sigma");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidArgument, "gamma must be >= 0");
  }
  if (!(kT >= 0.0) || !std::isfinite(kT)) {
    throw Error(ErrorCode::InvalidArgument, "kT must be >= 0");
  }
  if (!std::holds_alternative<FreePotential>(potential) &&
      !std::holds_alternative<HarmonicPotential>(potential)) {
    throw Error(ErrorCode::UnsupportedPotential,
                "Brownian moment equations close only for free or harmonic potentials, got " +
                    potential_name(potential));
  }
  if (const auto* h = std::get_if<HarmonicPotential>(&potential)) positive(h->omega0, "omega0");
}

GaussianState BrownianParams::initial_state() const {
  GaussianState s;
  s.var_q = 0.5 * sigma * sigma;
  s.var_p = 0.5 * hbar * hbar / (sigma * sigma);
  return s;
}

double gamma_coefficient(const BathSpec& bath, double t) {
  if (t == 0.0) return 0.0;
  if (bath.is_discrete()) {
    double acc = 0.0;
    for (const auto& o : bath.oscillators()) {
      const double w = o.frequency;
      acc += o.coupling * o.coupling * mode_energy_factor(bath, w) / (o.mass * w * w * w) *
             std::sin(w * t);
    }
    return acc;
  }
  const auto& sd = bath.density();
  const double gm = sd.gamma * sd.mass;
  const double lambda = sd.cutoff;
  const double kT = bath.kT();
  const double hbar = bath.hbar();
  if (bath.statistics() == Statistics::Quantum && kT == 0.0) {
    return 2.0 * gm * hbar / kPi * (1.0 - std::cos(lambda * t)) / t;
  }
  double value = quad::sine_integral(lambda * t);
  if (bath.statistics() == Statistics::Quantum) {
    // x coth x - 1 with x = hbar w / 2kT, weighted by sin(w t) / w.
    value += quad::integrate_oscillatory(
        [&](double w) {
          if (w <= 0.0) return 0.0;
          const double x = hbar * w / (2.0 * kT);
          const double excess = std::abs(x) < 1e-4 ? x * x / 3.0 : x / std::tanh(x) - 1.0;
          return excess * std::sin(w * t) / w;
        },
        0.0, lambda, t);
  }
  return 4.0 * gm * kT / kPi * value;
}

GaussianState propagate_moments(const BrownianParams& params, FrictionModel model,
                                const GaussianState& state, double t_from, double t_to,
                                const BathSpec* bath, Dynamics dynamics) {
  params.validate();
  if (model == FrictionModel::TimeDependentGamma && bath == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "TimeDependentGamma needs a bath specification");
  }
  const double k = stiffness(params);
  const bool symmetric = dynamics == Dynamics::TimeSymmetric;
  Vec5 y = pack(state);

  // Split at t = 0 so each piece has a fixed friction sign.
  std::vector<std::pair<double, double>> pieces;
  if ((t_from < 0.0 && t_to > 0.0) || (t_from > 0.0 && t_to < 0.0)) {
    pieces = {{t_from, 0.0}, {0.0, t_to}};
  } else {
    pieces = {{t_from, t_to}};
  }

  for (const auto& [a, b] : pieces) {
    if (a == b) continue;
    const double s = symmetric ? sgn(0.5 * (a + b)) : 1.0;
    if (model == FrictionModel::MarkovSgn) {
      y = exact_segment(params, k, s, s * params.diffusion(), y, b - a);
      continue;
    }
    const double h_max = rk4_step_limit(*bath);
    const long n = std::max(1L, static_cast<long>(std::ceil(std::abs(b - a) / h_max)));
    const double h = (b - a) / static_cast<double>(n);
    auto source = [&](double t) {
      const double g = gamma_coefficient(*bath, t);
      return symmetric ? g : std::abs(g);
    };
    double g_lo = source(a);
    for (long i = 0; i < n; ++i) {
      const double t0 = a + static_cast<double>(i) * h;
      const double g_mid = source(t0 + 0.5 * h);
      const double g_hi = source(i + 1 == n ? b : t0 + h);
      const Vec5 k1 = moment_rhs(params, k, s, g_lo, y);
      const Vec5 k2 = moment_rhs(params, k, s, g_mid, y + 0.5 * h * k1);
      const Vec5 k3 = moment_rhs(params, k, s, g_mid, y + 0.5 * h * k2);
      const Vec5 k4 = moment_rhs(params, k, s, g_hi, y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      g_lo = g_hi;
    }
  }
  return unpack(y);
}

ClosedFormCoefficients closed_form_coefficients(const BrownianParams& params, double t,
                                                ClosedFormVariant variant) {
  params.validate();
  if (!(params.gamma > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "closed-form solution needs gamma > 0");
  }
  const double m = params.mass;
  const double g = params.gamma;
  const double kT = params.kT;
  const double hbar = params.hbar;
  const double s2 = params.sigma * params.sigma;
  const double x = g * std::abs(t);
  const double e1 = std::exp(-x);
  const double e2 = e1 * e1;
  const double one_minus_e1 = -std::expm1(-x);
  const double one_minus_e2 = -std::expm1(-2.0 * x);

  const bool printed = variant == ClosedFormVariant::Printed;
  ClosedFormCoefficients c;
  const double n_thermal = (printed ? 1.0 : 4.0) * m * kT / (hbar * hbar);
  c.N = n_thermal * one_minus_e2 + e2 / s2;
  const double a_thermal = printed ? -kT / (2.0 * hbar * g) : 2.0 * kT / (hbar * g);
  c.A = Complex(0.0, hbar / (2.0 * s2 * m * g) * e1 * one_minus_e1 +
                         a_thermal * one_minus_e1 * one_minus_e1);
  c.B = hbar * hbar / (4.0 * s2 * m * m * g * g) * one_minus_e1 * one_minus_e1 + 0.25 * s2 +
        kT / (m * g * g) * spreading(x);
  return c;
}

GaussianState analytic_solution(const BrownianParams& params, double t,
                                ClosedFormVariant variant) {
  params.validate();
  if (!std::holds_alternative<FreePotential>(params.potential)) {
    throw Error(ErrorCode::UnsupportedPotential,
                "the closed-form Brownian solution is for the free particle only");
  }
  const auto c = closed_form_coefficients(params, t, variant);
  GaussianState s;
  s.var_p = 0.5 * params.hbar * params.hbar * c.N;
  s.cov_qp = sgn(t) * params.hbar * c.A.imag();
  s.var_q = 2.0 * c.B;
  return s;
}

void EntropyCurve::write_csv(std::ostream& os) const {
  csv::write_header(os, {"t", "S_vN", "purity", "varQ", "varP", "covQP"});
  for (const auto& s : samples) {
    csv::write_row(os, {s.t, s.entropy, s.purity, s.state.var_q, s.state.var_p,
                        s.state.cov_qp});
  }
}

EntropyCurve entropy_curve(const BrownianParams& params, const TimeGrid& grid,
                           ClosedFormVariant variant) {
  params.validate();
  if (grid.steps_backward != grid.steps_forward) {
    throw Error(ErrorCode::AsymmetricGrid, "entropy curve needs a grid symmetric about t = 0");
  }
  const bool free = std::holds_alternative<FreePotential>(params.potential);
  EntropyCurve curve;
  curve.samples.resize(static_cast<std::size_t>(grid.size()));
  const long origin = grid.origin_index();

  auto record = [&](long i, const GaussianState& state) {
    EntropySample& out = curve.samples[static_cast<std::size_t>(i)];
    out.t = grid.time(i);
    out.state = state;
    out.purity = state.purity(params.hbar);
    // Purity above one means the uncertainty bound is broken; entropy is
    // undefined there.
    out.entropy = out.purity > 1.0 + 1e-12 ? std::numeric_limits<double>::quiet_NaN()
                                           : entropy_from_purity(std::min(out.purity, 1.0));
  };

  if (free) {
    for (long i = 0; i < grid.size(); ++i) {
      record(i, analytic_solution(params, grid.time(i), variant));
    }
    return curve;
  }
  const GaussianState start = params.initial_state();
  record(origin, start);
  for (int dir : {1, -1}) {
    GaussianState state = start;
    for (long k = 1; k <= grid.steps_forward; ++k) {
      const double t0 = dir * (k - 1) * grid.dt;
      const double t1 = dir * k * grid.dt;
      state = propagate_moments(params, FrictionModel::MarkovSgn, state, t0, t1);
      record(origin + dir * k, state);
    }
  }
  return curve;
}

}  // namespace timesym
