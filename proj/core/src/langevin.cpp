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

#include "timesym/langevin.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <span>
#include <sstream>

#include "timesym/csv.hpp"

namespace timesym {

namespace {

std::size_t as_index(long i) { return static_cast<std::size_t>(i); }

void require_grid_match(const NoisePath& noise, const TimeGrid& grid) {
  if (static_cast<long>(noise.size()) != grid.size()) {
    std::ostringstream os;
    os << "noise path has " << noise.size() << " samples but the grid has " << grid.size();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const auto& t = noise.times();
  for (long i = 0; i < grid.size(); ++i) {
    const double expected = grid.time(i);
    if (std::abs(t[as_index(i)] - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
      throw Error(ErrorCode::DimensionMismatch, "noise path is not sampled on the time grid");
    }
  }
}

// Uniform spacing and index of t = 0 for a stored trajectory.
struct GridInfo {
  double h;
  long origin;
};

GridInfo grid_info(const TrajectorySeries& traj) {
  traj.validate();
  if (traj.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "trajectory needs at least 3 samples");
  }
  const double h = traj.t[1] - traj.t[0];
  for (std::size_t i = 1; i < traj.size(); ++i) {
    if (std::abs(traj.t[i] - traj.t[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw Error(ErrorCode::InvalidArgument, "trajectory times are not uniformly spaced");
    }
  }
  const double first = traj.t.front();
  const long origin = std::lround(-first / h);
  if (origin < 0 || origin >= static_cast<long>(traj.size()) ||
      std::abs(traj.t[as_index(origin)]) > 1e-6 * h) {
    throw Error(ErrorCode::InvalidArgument, "trajectory grid must contain t = 0");
  }
  return {h, origin};
}

// Implicit trapezoid with trapezoidal memory, on tau = 0..N.
void gle_branch(const SystemSpec& sys, const std::vector<double>& kernel,
                const std::vector<double>& drive, double q0, double p0, double h,
                std::vector<double>& q, std::vector<double>& p) {
  const std::size_t n_steps = drive.size();
  const double m = sys.mass;
  q.assign(n_steps, 0.0);
  p.assign(n_steps, 0.0);
  q[0] = q0;
  p[0] = p0;
  if (n_steps == 0) return;
  double force = -sys.gradient(q0) - kernel[0] * q0 + drive[0];
  const double implicit = 1.0 + h * h * kernel[0] / (4.0 * m);
  for (std::size_t n = 0; n + 1 < n_steps; ++n) {
    double history = 0.5 * kernel[n + 1] * p[0];
    for (std::size_t j = 1; j <= n; ++j) history += kernel[n + 1 - j] * p[j];
    history *= h;
    const double known = -history / m - kernel[n + 1] * q0 + drive[n + 1];
    const double base = p[n] + 0.5 * h * force;
    double p_next = p[n] + h * force;
    double q_next = q[n];
    for (int iter = 0; iter < 100; ++iter) {
      q_next = q[n] + 0.5 * h / m * (p[n] + p_next);
      const double updated = (base + 0.5 * h * (-sys.gradient(q_next) + known)) / implicit;
      const double change = std::abs(updated - p_next);
      p_next = updated;
      if (change <= 1e-15 * (1.0 + std::abs(p_next))) break;
    }
    q_next = q[n] + 0.5 * h / m * (p[n] + p_next);
    q[n + 1] = q_next;
    p[n + 1] = p_next;
    force = -sys.gradient(q_next) - (history + 0.5 * h * kernel[0] * p_next) / m -
            kernel[n + 1] * q0 + drive[n + 1];
  }
}

// Stochastic Heun for dQ = P/M, dP = (-V' - c gamma P + g) with additive noise.
struct MarkovBranch {
  const SystemSpec* sys;
  double gamma;
  double friction_sign;
  const std::vector<double>* drive;  // may be null
  double kick_scale;                 // sqrt(2 gammaM kT h), 0 without white noise
  std::mt19937_64* rng;
};

void markov_branch(const MarkovBranch& b, double q0, double p0, double h, std::size_t n_steps,
                   std::vector<double>& q, std::vector<double>& p) {
  const double m = b.sys->mass;
  std::normal_distribution<double> normal(0.0, 1.0);
  q.assign(n_steps, 0.0);
  p.assign(n_steps, 0.0);
  if (n_steps == 0) return;
  q[0] = q0;
  p[0] = p0;
  auto drift = [&](double qq, double pp, std::size_t i) {
    double f = -b.sys->gradient(qq) - b.friction_sign * b.gamma * pp;
    if (b.drive != nullptr) f += (*b.drive)[i];
    return f;
  };
  for (std::size_t n = 0; n + 1 < n_steps; ++n) {
    const double kick = b.rng != nullptr ? b.kick_scale * normal(*b.rng) : 0.0;
    const double a_p = drift(q[n], p[n], n);
    const double a_q = p[n] / m;
    const double p_pred = p[n] + h * a_p + kick;
    const double q_pred = q[n] + h * a_q;
    p[n + 1] = p[n] + 0.5 * h * (a_p + drift(q_pred, p_pred, n + 1)) + kick;
    q[n + 1] = q[n] + 0.5 * h * (a_q + p_pred / m);
  }
}

TrajectorySeries assemble(const TimeGrid& grid, const std::vector<double>& qf,
                          const std::vector<double>& pf, const std::vector<double>& qb,
                          const std::vector<double>& pb) {
  TrajectorySeries out;
  out.t = grid.times();
  out.Q.resize(out.t.size());
  out.P.resize(out.t.size());
  const long origin = grid.origin_index();
  for (long k = 0; k <= grid.steps_forward; ++k) {
    out.Q[as_index(origin + k)] = qf[as_index(k)];
    out.P[as_index(origin + k)] = pf[as_index(k)];
  }
  for (long k = 1; k <= grid.steps_backward; ++k) {
    out.Q[as_index(origin - k)] = qb[as_index(k)];
    out.P[as_index(origin - k)] = -pb[as_index(k)];
  }
  return out;
}

}  // namespace

void TrajectorySeries::validate() const {
  if (Q.size() != t.size() || P.size() != t.size()) {
    throw Error(ErrorCode::DimensionMismatch, "trajectory columns differ in length");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(Q[i]) || !std::isfinite(P[i])) {
      std::ostringstream os;
      os << "trajectory has a non-finite sample at index " << i;
      throw Error(ErrorCode::InvalidArgument, os.str());
    }
  }
}

void TrajectorySeries::write_csv(std::ostream& os) const {
  validate();
  csv::write_header(os, {"t", "Q", "P"});
  for (std::size_t i = 0; i < t.size(); ++i) csv::write_row(os, {t[i], Q[i], P[i]});
}

FullState momentum_flip(FullState state) {
  state.P = -state.P;
  for (double& p : state.bath.p) p = -p;
  return state;
}

double total_energy(const SystemSpec& sys, const BathSpec& bath, const FullState& state) {
  const auto bank = bath.oscillators();
  if (state.bath.q.size() != bank.size() || state.bath.p.size() != bank.size()) {
    throw Error(ErrorCode::DimensionMismatch, "bath state size does not match the bank");
  }
  double e = sys.energy(state.Q, state.P);
  for (std::size_t k = 0; k < bank.size(); ++k) {
    const auto& o = bank[k];
    const double q = state.bath.q[k];
    const double p = state.bath.p[k];
    const double mw2 = o.mass * o.frequency * o.frequency;
    e += p * p / (2.0 * o.mass) + 0.5 * mw2 * q * q + o.coupling * q * state.Q +
         o.coupling * o.coupling * state.Q * state.Q / (2.0 * mw2);
  }
  return e;
}

namespace {

// Symmetric split step: half drift of Q, exact bath rotation plus momentum
// impulse at frozen Q, half drift. Every piece is an exact flow, so h may be
// negative.
void split_step(const SystemSpec& sys, std::span<const Oscillator> bank, FullState& s, double h) {
  s.Q += 0.5 * h * s.P / sys.mass;
  double impulse = -sys.gradient(s.Q) * h;
  for (std::size_t k = 0; k < bank.size(); ++k) {
    const auto& o = bank[k];
    const double w = o.frequency;
    const double mw = o.mass * w;
    // Rotation about the coupling-shifted centre at frozen Q.
    const double centre = -o.coupling * s.Q / (mw * w);
    const double x0 = s.bath.q[k] - centre;
    const double p0 = s.bath.p[k];
    const double c = std::cos(w * h);
    const double sn = std::sin(w * h);
    s.bath.q[k] = centre + x0 * c + p0 / mw * sn;
    s.bath.p[k] = -mw * x0 * sn + p0 * c;
    impulse -= o.coupling * (x0 * sn / w + p0 * (1.0 - c) / (mw * w));
  }
  s.P += impulse;
  s.Q += 0.5 * h * s.P / sys.mass;
}

}  // namespace

FullState exact_step(const SystemSpec& sys, const BathSpec& bath, const FullState& state,
                     double dt) {
  const auto bank = bath.oscillators();
  if (state.bath.q.size() != bank.size() || state.bath.p.size() != bank.size()) {
    throw Error(ErrorCode::DimensionMismatch, "bath state size does not match the bank");
  }
  // Fourth-order triple-jump composition of the symmetric step.
  static const double cube_root_two = std::cbrt(2.0);
  static const double outer = 1.0 / (2.0 - cube_root_two);
  static const double inner = -cube_root_two / (2.0 - cube_root_two);
  FullState s = state;
  split_step(sys, bank, s, outer * dt);
  split_step(sys, bank, s, inner * dt);
  split_step(sys, bank, s, outer * dt);
  return s;
}

std::vector<FullState> integrate_exact_states(const SystemSpec& sys, const BathSpec& bath,
                                              const FullState& init, const TimeGrid& grid) {
  sys.validate();
  std::vector<FullState> states(as_index(grid.size()));
  const long origin = grid.origin_index();
  states[as_index(origin)] = init;
  for (long i = origin; i + 1 < grid.size(); ++i) {
    states[as_index(i + 1)] = exact_step(sys, bath, states[as_index(i)], grid.dt);
  }
  for (long i = origin; i > 0; --i) {
    states[as_index(i - 1)] = exact_step(sys, bath, states[as_index(i)], -grid.dt);
  }
  return states;
}

TrajectorySeries integrate_exact(const SystemSpec& sys, const BathSpec& bath,
                                 const FullState& init, const TimeGrid& grid) {
  const auto states = integrate_exact_states(sys, bath, init, grid);
  TrajectorySeries out;
  out.t = grid.times();
  out.Q.reserve(states.size());
  out.P.reserve(states.size());
  for (const auto& s : states) {
    out.Q.push_back(s.Q);
    out.P.push_back(s.P);
  }
  return out;
}

NoisePath coupled_noise(const BathSpec& bath, const BathState& state, const TimeGrid& grid) {
  auto times = grid.times();
  std::vector<double> values(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    values[i] = -stochastic_force(bath, state, times[i]);
  }
  return NoisePath(std::move(times), std::move(values));
}

TrajectorySeries integrate_gle(const SystemSpec& sys, const BathSpec& bath, double q0,
                               double p0, const NoisePath& noise, const TimeGrid& grid) {
  sys.validate();
  require_grid_match(noise, grid);
  const double h = grid.dt;
  const long longest = std::max(grid.steps_forward, grid.steps_backward);
  std::vector<double> kernel(as_index(longest + 1));
  for (long n = 0; n <= longest; ++n) kernel[as_index(n)] = memory_kernel(bath, n * h);

  const long origin = grid.origin_index();
  const auto& f = noise.values();
  std::vector<double> fwd(as_index(grid.steps_forward + 1));
  std::vector<double> bwd(as_index(grid.steps_backward + 1));
  for (long k = 0; k <= grid.steps_forward; ++k) fwd[as_index(k)] = f[as_index(origin + k)];
  for (long k = 0; k <= grid.steps_backward; ++k) bwd[as_index(k)] = f[as_index(origin - k)];

  std::vector<double> qf, pf, qb, pb;
  gle_branch(sys, kernel, fwd, q0, p0, h, qf, pf);
  gle_branch(sys, kernel, bwd, q0, -p0, h, qb, pb);
  return assemble(grid, qf, pf, qb, pb);
}

TrajectorySeries integrate_gle(const SystemSpec& sys, const BathSpec& bath, double q0,
                               double p0, std::uint64_t seed, const TimeGrid& grid) {
  const BathState state = sample_thermal_state(bath, seed);
  return integrate_gle(sys, bath, q0, p0, coupled_noise(bath, state, grid), grid);
}

TrajectorySeries integrate_markovian(const SystemSpec& sys, double gammaM,
                                     const MarkovNoise& noise, double q0, double p0,
                                     const TimeGrid& grid, Dynamics dynamics) {
  sys.validate();
  if (!(gammaM >= 0.0) || !std::isfinite(gammaM)) {
    throw Error(ErrorCode::InvalidArgument, "friction gammaM must be >= 0");
  }
  const double h = grid.dt;
  const double gamma = gammaM / sys.mass;
  const long origin = grid.origin_index();
  const std::size_t n_fwd = as_index(grid.steps_forward + 1);
  const std::size_t n_bwd = as_index(grid.steps_backward + 1);

  std::vector<double> fwd_drive, bwd_drive;
  const std::vector<double>* fwd_ptr = nullptr;
  const std::vector<double>* bwd_ptr = nullptr;
  double kick = 0.0;
  std::mt19937_64 rng_fwd, rng_bwd;
  bool white = false;
  if (const auto* path = std::get_if<NoisePath>(&noise)) {
    require_grid_match(*path, grid);
    const auto& f = path->values();
    fwd_drive.resize(n_fwd);
    bwd_drive.resize(n_bwd);
    for (std::size_t k = 0; k < n_fwd; ++k) fwd_drive[k] = f[as_index(origin) + k];
    for (std::size_t k = 0; k < n_bwd; ++k) bwd_drive[k] = f[as_index(origin) - k];
    fwd_ptr = &fwd_drive;
    bwd_ptr = &bwd_drive;
  } else if (const auto* wn = std::get_if<WhiteNoise>(&noise)) {
    if (!(wn->kT >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "white noise kT must be >= 0");
    }
    kick = std::sqrt(2.0 * gammaM * wn->kT * h);
    rng_fwd.seed(wn->seed);
    rng_bwd.seed(wn->seed ^ 0x9e3779b97f4a7c15ULL);
    white = true;
  }

  // Backward branch in tau = -t with P~ = -P: friction keeps its damping sign
  // for the time-symmetric equation and flips for the standard one.
  const double bwd_sign = dynamics == Dynamics::TimeSymmetric ? 1.0 : -1.0;
  std::vector<double> qf, pf, qb, pb;
  markov_branch({&sys, gamma, 1.0, fwd_ptr, kick, white ? &rng_fwd : nullptr}, q0, p0, h,
                n_fwd, qf, pf);
  markov_branch({&sys, gamma, bwd_sign, bwd_ptr, kick, white ? &rng_bwd : nullptr}, q0, -p0,
                h, n_bwd, qb, pb);
  return assemble(grid, qf, pf, qb, pb);
}

double reflection_residual(const TrajectorySeries& traj, const SystemSpec& sys,
                           double gammaM, const NoisePath* noise, double a,
                           Dynamics dynamics) {
  const auto [h, origin] = grid_info(traj);
  const long n = static_cast<long>(traj.size());
  if (noise != nullptr && static_cast<long>(noise->size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "noise path and trajectory differ in length");
  }
  const long shift = std::lround(a / h);
  if (std::abs(a - shift * h) > 1e-6 * h) {
    throw Error(ErrorCode::InvalidArgument, "reflection point must lie on the time grid");
  }
  const long pivot = origin + shift;
  const double m = sys.mass;
  const double gamma = gammaM / m;

  double worst = 0.0;
  bool any = false;
  for (long c = 1; c + 1 < n; ++c) {
    if (c - 1 <= origin && origin <= c + 1) continue;
    const long lo = 2 * pivot - (c + 1);
    const long hi = 2 * pivot - (c - 1);
    if (lo < 0 || hi >= n) continue;
    double qr[3], pr[3], ap[3], aq[3];
    for (int k = 0; k < 3; ++k) {
      const long i = c - 1 + k;
      const long mirror = 2 * pivot - i;
      qr[k] = traj.Q[as_index(mirror)];
      pr[k] = -traj.P[as_index(mirror)];
      const double f = noise != nullptr ? noise->values()[as_index(mirror)] : 0.0;
      const double s = dynamics == Dynamics::TimeSymmetric ? sgn(traj.t[as_index(i)]) : 1.0;
      ap[k] = -sys.gradient(qr[k]) - s * gamma * pr[k] + f;
      aq[k] = pr[k] / m;
    }
    const double rp = (pr[2] - pr[0]) / (2.0 * h) - (ap[0] + 4.0 * ap[1] + ap[2]) / 6.0;
    const double rq = (qr[2] - qr[0]) / (2.0 * h) - (aq[0] + 4.0 * aq[1] + aq[2]) / 6.0;
    worst = std::max({worst, std::abs(rp), m * std::abs(rq)});
    any = true;
  }
  if (!any) {
    throw Error(ErrorCode::InvalidArgument, "reflected trajectory does not overlap the grid");
  }
  return worst;
}

double check_time_reversal_residual(const TrajectorySeries& traj, const SystemSpec& sys,
                                    double gammaM, const NoisePath* noise,
                                    Dynamics dynamics) {
  traj.validate();
  if (traj.size() < 3 ||
      std::abs(traj.t.front() + traj.t.back()) > 1e-9 * std::max(1.0, traj.t.back())) {
    throw Error(ErrorCode::AsymmetricGrid,
                "time-reversal check needs a grid symmetric about t = 0");
  }
  return reflection_residual(traj, sys, gammaM, noise, 0.0, dynamics);
}

double gle_reflection_residual(const SystemSpec& sys, const BathSpec& bath,
                               const FullState& init, double a, double half_span, double dt,
                               bool reverse_bath) {
  if (!(half_span > 0.0) || !(dt > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "half_span and dt must be positive");
  }
  const long shift = std::lround(a / dt);
  const long span = std::lround(half_span / dt);
  const TimeGrid grid{dt, std::max(0L, span - shift), std::max(0L, shift + span)};
  const auto states = integrate_exact_states(sys, bath, init, grid);
  const long pivot = grid.origin_index() + shift;

  const auto& anchor = states[as_index(pivot)];
  BathState reflected_bath = anchor.bath;
  if (reverse_bath) {
    for (double& p : reflected_bath.p) p = -p;
  }

  // Reflected trajectory on s = j*dt, j in [-span, span].
  const std::size_t width = as_index(2 * span + 1);
  std::vector<double> qr(width), pr(width), grad(width);
  for (long j = -span; j <= span; ++j) {
    const auto& st = states[as_index(pivot - j)];
    qr[as_index(j + span)] = st.Q;
    pr[as_index(j + span)] = -st.P;
    grad[as_index(j + span)] = sys.gradient(st.Q);
  }
  std::vector<double> k1(as_index(span + 1));
  for (long m = 0; m <= span; ++m) k1[as_index(m)] = kernel_integral(bath, m * dt);

  const double mass = sys.mass;
  const double q_start = qr[as_index(span)];
  const double p_start = pr[as_index(span)];
  double worst = 0.0;
  for (int dir : {1, -1}) {
    const double h = dir * dt;
    double potential_integral = 0.0;
    for (long step = 1; step <= span; ++step) {
      const long j = dir * step;
      potential_integral +=
          0.5 * h * (grad[as_index(j - dir + span)] + grad[as_index(j + span)]);
      // int_0^s K1(s - v) P(v) dv by the trapezoid rule; K1(0) = 0.
      double conv = 0.5 * k1[as_index(step)] * p_start;
      for (long i = 1; i < step; ++i) {
        conv += k1[as_index(step - i)] * pr[as_index(dir * i + span)];
      }
      conv *= h * dir;  // K1 is odd, so K1(dir*m*dt) = dir*K1(m*dt)
      const double s = j * dt;
      const double forcing = -stochastic_force_integral(bath, reflected_bath, s);
      const double r = pr[as_index(j + span)] - p_start + potential_integral + conv / mass +
                       dir * k1[as_index(step)] * q_start - forcing;
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

TranslationTest check_time_translation_breaking(const SystemSpec& sys, double gammaM,
                                                double a, double q0, double p0,
                                                double half_span, double dt) {
  const auto grid = TimeGrid::symmetric(dt, half_span);
  const auto traj =
      integrate_markovian(sys, gammaM, std::monostate{}, q0, p0, grid, Dynamics::TimeSymmetric);
  TranslationTest out;
  out.a = a;
  out.residual_at_origin = reflection_residual(traj, sys, gammaM, nullptr, 0.0);
  out.residual_at_a = reflection_residual(traj, sys, gammaM, nullptr, a);
  out.broken = out.residual_at_a > 10.0 * out.residual_at_origin;
  return out;
}

}  // namespace timesym
