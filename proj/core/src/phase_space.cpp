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

#include "timesym/phase_space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "timesym/csv.hpp"

namespace timesym {

namespace {

constexpr char kMagic[4] = {'T', 'S', 'W', 'G'};
constexpr std::uint32_t kBinaryVersion = 1;

template <typename T>
void put_le(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw Error(ErrorCode::InvalidArgument, "truncated phase-space binary file");
  }
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

// Odd-derivative coefficients of the quantum series:
// (-1)^n hbar^{2n} / (2^{2n} (2n+1)!) for n = 1..3.
double series_coefficient(int n, double hbar) {
  static constexpr double factorial[] = {1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0};
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(hbar, 2 * n) / (std::pow(2.0, 2 * n) * factorial[2 * n + 1]);
}

// Central differences of order 1, 3, 5, 7 with zero ghost values.
double central_derivative(const double* row, int j, int n, int order, double h) {
  auto v = [&](int k) { return (k < 0 || k >= n) ? 0.0 : row[k]; };
  switch (order) {
    case 1:
      return (v(j + 1) - v(j - 1)) / (2.0 * h);
    case 3:
      return (v(j + 2) - 2.0 * v(j + 1) + 2.0 * v(j - 1) - v(j - 2)) / (2.0 * h * h * h);
    case 5:
      return (v(j + 3) - 4.0 * v(j + 2) + 5.0 * v(j + 1) - 5.0 * v(j - 1) + 4.0 * v(j - 2) -
              v(j - 3)) /
             (2.0 * std::pow(h, 5));
    case 7:
      return (v(j + 4) - 6.0 * v(j + 3) + 14.0 * v(j + 2) - 14.0 * v(j + 1) +
              14.0 * v(j - 1) - 14.0 * v(j - 2) + 6.0 * v(j - 3) - v(j - 4)) /
             (2.0 * std::pow(h, 7));
    default:
      return 0.0;
  }
}

struct Stepper {
  const PhaseSpaceGrid* shape;
  const PdeParams* params;
  double hamiltonian_sign;   // +1 forward, -1 backward (tau = -t)
  double dissipation_sign;   // sign in front of the friction/diffusion block
  std::vector<double> force;                 // V'(x_i)
  std::vector<std::vector<double>> series;   // c_n V^{(2n+1)}(x_i)
  std::vector<double> k1, k2, k3, k4, tmp;

  int nx() const { return shape->nx(); }
  int np() const { return shape->np(); }

  // dW/dtau from x-advection: -h (p / M) dW/dx.
  void advect_x(const std::vector<double>& w, std::vector<double>& out) const {
    const int nx_ = nx(), np_ = np();
    const double dx = shape->dx();
    const double m = params->mass;
    for (int i = 0; i < nx_; ++i) {
      for (int j = 0; j < np_; ++j) {
        const double right = i + 1 < nx_ ? w[static_cast<std::size_t>(i + 1) * np_ + j] : 0.0;
        const double left = i > 0 ? w[static_cast<std::size_t>(i - 1) * np_ + j] : 0.0;
        out[static_cast<std::size_t>(i) * np_ + j] =
            -hamiltonian_sign * shape->p(j) / m * (right - left) / (2.0 * dx);
      }
    }
  }

  // Momentum operator: h [V' dW/dp + sum c_n V^(2n+1) d^(2n+1) W/dp^(2n+1)]
  // + d [gamma d(pW)/dp + D d2W/dp2].
  void momentum(const std::vector<double>& w, std::vector<double>& out) {
    const int nx_ = nx(), np_ = np();
    const double dp = shape->dp();
    const double gamma = params->gamma;
    const double diff = params->diffusion_coefficient();
    for (int i = 0; i < nx_; ++i) {
      const double* row = &w[static_cast<std::size_t>(i) * np_];
      double* dst = &out[static_cast<std::size_t>(i) * np_];
      for (int j = 0; j < np_; ++j) {
        double ham = force[static_cast<std::size_t>(i)] * central_derivative(row, j, np_, 1, dp);
        for (std::size_t n = 0; n < series.size(); ++n) {
          const double c = series[n][static_cast<std::size_t>(i)];
          if (c != 0.0) {
            ham += c * central_derivative(row, j, np_, 2 * static_cast<int>(n) + 3, dp);
          }
        }
        const double up = j + 1 < np_ ? row[j + 1] : 0.0;
        const double down = j > 0 ? row[j - 1] : 0.0;
        const double drift =
            gamma * (shape->p(j + 1) * up - shape->p(j - 1) * down) / (2.0 * dp);
        const double spread = diff * (up - 2.0 * row[j] + down) / (dp * dp);
        dst[j] = hamiltonian_sign * ham + dissipation_sign * (drift + spread);
      }
    }
  }

  template <typename Op>
  void rk4(std::vector<double>& w, double h, Op op) {
    const std::size_t n = w.size();
    op(w, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = w[i] + 0.5 * h * k1[i];
    op(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = w[i] + 0.5 * h * k2[i];
    op(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = w[i] + h * k3[i];
    op(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      w[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }
};

}  // namespace

PhaseSpaceGrid::PhaseSpaceGrid(double x_max, double p_max, int nx, int np)
    : x_max_(x_max), p_max_(p_max), nx_(nx), np_(np) {
  if (!(x_max > 0.0) || !(p_max > 0.0) || nx < 5 || np < 5) {
    throw Error(ErrorCode::InvalidArgument,
                "phase-space grid needs positive ranges and at least 5 nodes per axis");
  }
  w_.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(np), 0.0);
}

PhaseSpaceGrid PhaseSpaceGrid::gaussian(double x_max, double p_max, int nx, int np,
                                        const GaussianState& s) {
  const double det = s.determinant();
  if (!(det > 0.0) || !(s.var_q > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Gaussian covariance must be positive definite");
  }
  PhaseSpaceGrid g(x_max, p_max, nx, np);
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
  for (int i = 0; i < nx; ++i) {
    const double dx = g.x(i) - s.mean_q;
    for (int j = 0; j < np; ++j) {
      const double dp = g.p(j) - s.mean_p;
      const double quad = (s.var_p * dx * dx - 2.0 * s.cov_qp * dx * dp + s.var_q * dp * dp) / det;
      g.at(i, j) = norm * std::exp(-0.5 * quad);
    }
  }
  return g;
}

double PhaseSpaceGrid::total_mass() const {
  double acc = 0.0;
  for (int i = 0; i < nx_; ++i) {
    const double wi = trapezoid_weight(i, nx_);
    for (int j = 0; j < np_; ++j) acc += wi * trapezoid_weight(j, np_) * at(i, j);
  }
  return acc * dx() * dp();
}

double PhaseSpaceGrid::max_boundary() const {
  double m = 0.0;
  for (int i = 0; i < nx_; ++i) m = std::max({m, std::abs(at(i, 0)), std::abs(at(i, np_ - 1))});
  for (int j = 0; j < np_; ++j) m = std::max({m, std::abs(at(0, j)), std::abs(at(nx_ - 1, j))});
  return m;
}

PhaseSpaceGrid PhaseSpaceGrid::momentum_flipped() const {
  PhaseSpaceGrid out = *this;
  for (int i = 0; i < nx_; ++i) {
    for (int j = 0; j < np_; ++j) out.at(i, j) = at(i, np_ - 1 - j);
  }
  return out;
}

double PhaseSpaceGrid::l1_distance(const PhaseSpaceGrid& other) const {
  if (other.nx_ != nx_ || other.np_ != np_ || other.x_max_ != x_max_ ||
      other.p_max_ != p_max_) {
    throw Error(ErrorCode::DimensionMismatch, "phase-space grids differ");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < w_.size(); ++k) acc += std::abs(w_[k] - other.w_[k]);
  return acc * dx() * dp();
}

void PhaseSpaceGrid::write_csv(std::ostream& os) const {
  csv::write_header(os, {"x", "p", "W"});
  for (int i = 0; i < nx_; ++i) {
    for (int j = 0; j < np_; ++j) csv::write_row(os, {x(i), p(j), at(i, j)});
  }
}

void PhaseSpaceGrid::write_binary(std::ostream& os) const {
  os.write(kMagic, 4);
  put_le<std::uint32_t>(os, kBinaryVersion);
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(nx_));
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(np_));
  put_le<double>(os, x_max_);
  put_le<double>(os, p_max_);
  put_le<double>(os, time_);
  for (double v : w_) put_le<double>(os, v);
}

PhaseSpaceGrid PhaseSpaceGrid::read_binary(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw Error(ErrorCode::InvalidArgument, "not a phase-space binary file");
  }
  const auto version = get_le<std::uint32_t>(is);
  if (version != kBinaryVersion) {
    throw Error(ErrorCode::InvalidArgument,
                "unsupported phase-space binary version " + std::to_string(version));
  }
  const auto nx = get_le<std::uint64_t>(is);
  const auto np = get_le<std::uint64_t>(is);
  if (nx > 1u << 20 || np > 1u << 20) {
    throw Error(ErrorCode::InvalidArgument, "phase-space binary dimensions are implausible");
  }
  const double x_max = get_le<double>(is);
  const double p_max = get_le<double>(is);
  const double time = get_le<double>(is);
  PhaseSpaceGrid g(x_max, p_max, static_cast<int>(nx), static_cast<int>(np));
  g.set_time(time);
  for (double& v : g.w_) v = get_le<double>(is);
  return g;
}

void PdeParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be positive");
    }
  };
  positive(mass, "mass");
  positive(hbar, "hbar");
  positive(dt, "dt");
  if (!(gamma >= 0.0) || !(kT >= 0.0) || !(t_final >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "gamma, kT and t_final must be >= 0");
  }
  if (n_max < 1 || n_max > 3) {
    throw Error(ErrorCode::InvalidArgument, "n_max must be 1, 2 or 3");
  }
  if (mode == PdeMode::QuantumWigner) {
    const int degree = potential_degree(potential);
    if (degree < 0) {
      throw Error(ErrorCode::UnsupportedPotential,
                  "QuantumWigner needs a polynomial potential; tabulated splines have no "
                  "exact odd-derivative series");
    }
    if (degree > 2 * n_max + 2) {
      throw Error(ErrorCode::UnsupportedPotential,
                  "potential degree exceeds what the truncated series represents exactly");
    }
  }
}

double PdeParams::diffusion_coefficient() const noexcept {
  const double d = gamma * mass * kT;
  return diffusion == DiffusionConvention::Printed ? 2.0 * d : d;
}

double max_stable_dt(const PhaseSpaceGrid& grid, const PdeParams& params) {
  params.validate();
  const double p_max = grid.p_max();
  double force_max = 0.0;
  double series_max = 0.0;
  for (int i = 0; i < grid.nx(); ++i) {
    const double x = grid.x(i);
    force_max = std::max(force_max, std::abs(potential_derivative(params.potential, params.mass, x, 1)));
    if (params.mode == PdeMode::QuantumWigner) {
      for (int n = 1; n <= params.n_max; ++n) {
        const double c = std::abs(series_coefficient(n, params.hbar) *
                                  potential_derivative(params.potential, params.mass, x, 2 * n + 1));
        series_max = std::max(series_max, c * std::pow(2.0 / grid.dp(), 2 * n + 1));
      }
    }
  }
  double limit = grid.dx() * params.mass / p_max;
  const double momentum_rate = force_max + params.gamma * p_max;
  if (momentum_rate > 0.0) limit = std::min(limit, grid.dp() / momentum_rate);
  const double d = params.diffusion_coefficient();
  if (d > 0.0) limit = std::min(limit, grid.dp() * grid.dp() / (2.0 * d));
  if (series_max > 0.0) limit = std::min(limit, 1.0 / series_max);
  return 0.5 * limit;
}

PhaseSpaceGrid evolve(const PhaseSpaceGrid& grid, const PdeParams& params) {
  params.validate();
  const double t0 = grid.time();
  const bool forward = params.direction == Direction::Forward;
  if ((forward && t0 < 0.0) || (!forward && t0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "evolution must move away from t = 0 (forward from t >= 0, backward from t <= 0)");
  }
  const double limit = max_stable_dt(grid, params);
  if (params.dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << params.dt << " exceeds the stability limit " << limit;
    throw Error(ErrorCode::CflViolation, os.str());
  }
  PhaseSpaceGrid out = grid;
  if (params.t_final == 0.0) return out;

  Stepper st;
  st.shape = &grid;
  st.params = &params;
  st.hamiltonian_sign = forward ? 1.0 : -1.0;
  // In tau = -t the time-symmetric friction keeps its damping sign; the
  // standard equation turns anti-diffusive.
  st.dissipation_sign =
      (forward || params.dynamics == Dynamics::TimeSymmetric) ? 1.0 : -1.0;
  st.force.resize(static_cast<std::size_t>(grid.nx()));
  for (int i = 0; i < grid.nx(); ++i) {
    st.force[static_cast<std::size_t>(i)] =
        potential_derivative(params.potential, params.mass, grid.x(i), 1);
  }
  if (params.mode == PdeMode::QuantumWigner) {
    for (int n = 1; n <= params.n_max; ++n) {
      std::vector<double> c(static_cast<std::size_t>(grid.nx()));
      bool any = false;
      for (int i = 0; i < grid.nx(); ++i) {
        c[static_cast<std::size_t>(i)] =
            series_coefficient(n, params.hbar) *
            potential_derivative(params.potential, params.mass, grid.x(i), 2 * n + 1);
        any = any || c[static_cast<std::size_t>(i)] != 0.0;
      }
      st.series.push_back(any ? std::move(c) : std::vector<double>(c.size(), 0.0));
    }
  }
  const std::size_t size = out.values().size();
  for (auto* buf : {&st.k1, &st.k2, &st.k3, &st.k4, &st.tmp}) buf->assign(size, 0.0);

  const long steps = std::max(1L, static_cast<long>(std::ceil(params.t_final / params.dt - 1e-9)));
  const double h = params.t_final / static_cast<double>(steps);
  auto& w = out.values();
  auto advect = [&](const std::vector<double>& in, std::vector<double>& res) { st.advect_x(in, res); };
  auto mom = [&](const std::vector<double>& in, std::vector<double>& res) { st.momentum(in, res); };
  for (long s = 0; s < steps; ++s) {
    st.rk4(w, 0.5 * h, advect);
    st.rk4(w, h, mom);
    st.rk4(w, 0.5 * h, advect);
    if (params.mode == PdeMode::ClassicalFP) {
      const double lowest = *std::min_element(w.begin(), w.end());
      if (lowest < -1e-6) {
        std::ostringstream os;
        os << "Fokker-Planck density went negative (" << lowest << ") at step " << s;
        throw Error(ErrorCode::PositivityLoss, os.str());
      }
    }
  }
  out.set_time(forward ? t0 + params.t_final : t0 - params.t_final);
  return out;
}

GaussianState moments(const PhaseSpaceGrid& g) {
  double m0 = 0.0, mx = 0.0, mp = 0.0, mxx = 0.0, mpp = 0.0, mxp = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    const double x = g.x(i);
    const double wi = trapezoid_weight(i, g.nx());
    for (int j = 0; j < g.np(); ++j) {
      const double p = g.p(j);
      const double w = wi * trapezoid_weight(j, g.np()) * g.at(i, j);
      m0 += w;
      mx += w * x;
      mp += w * p;
      mxx += w * x * x;
      mpp += w * p * p;
      mxp += w * x * p;
    }
  }
  if (!(m0 > 0.0)) throw Error(ErrorCode::InvalidArgument, "phase-space field has no mass");
  GaussianState s;
  s.mean_q = mx / m0;
  s.mean_p = mp / m0;
  s.var_q = mxx / m0 - s.mean_q * s.mean_q;
  s.var_p = mpp / m0 - s.mean_p * s.mean_p;
  s.cov_qp = mxp / m0 - s.mean_q * s.mean_p;
  return s;
}

namespace {

struct ReversalRun {
  double defect;
  PhaseSpaceGrid forward_image;
};

ReversalRun reversal_defect(const PhaseSpaceGrid& w0, const PdeParams& params) {
  PdeParams fwd = params;
  fwd.direction = Direction::Forward;
  const PhaseSpaceGrid forward_image = evolve(w0, fwd);
  if (params.dynamics == Dynamics::TimeSymmetric) {
    PdeParams bwd = params;
    bwd.direction = Direction::Backward;
    const PhaseSpaceGrid back = evolve(w0.momentum_flipped(), bwd);
    return {back.l1_distance(forward_image.momentum_flipped()), forward_image};
  }
  PhaseSpaceGrid reflected = forward_image.momentum_flipped();
  reflected.set_time(0.0);
  const PhaseSpaceGrid echo = evolve(reflected, fwd);
  return {echo.l1_distance(w0.momentum_flipped()), forward_image};
}

}  // namespace

PhaseSpaceReversal check_phase_space_time_reversal(const GaussianState& initial,
                                                   double x_max, double p_max, int nx,
                                                   int np, const PdeParams& params) {
  const auto coarse = PhaseSpaceGrid::gaussian(x_max, p_max, nx, np, initial);
  const auto fine = PhaseSpaceGrid::gaussian(x_max, p_max, 2 * nx - 1, 2 * np - 1, initial);
  PdeParams fine_params = params;
  fine_params.dt = std::min(0.5 * params.dt, max_stable_dt(fine, params));

  const ReversalRun c = reversal_defect(coarse, params);
  const ReversalRun f = reversal_defect(fine, fine_params);

  PhaseSpaceGrid sampled(x_max, p_max, nx, np);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < np; ++j) sampled.at(i, j) = f.forward_image.at(2 * i, 2 * j);
  }
  PhaseSpaceReversal out;
  out.defect = c.defect;
  out.refined_defect = f.defect;
  out.discretization_estimate = sampled.l1_distance(c.forward_image);
  out.passed = out.defect < 2.0 * out.discretization_estimate + 1e-12;
  return out;
}

}  // namespace timesym
