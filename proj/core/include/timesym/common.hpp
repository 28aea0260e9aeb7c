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

#ifndef TIMESYM_COMMON_HPP
#define TIMESYM_COMMON_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace timesym {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonIntegrableKernel,
  ContinuumBath,
  UnsupportedPotential,
  AmbiguousSecularGrouping,
  NotPositiveSemidefinite,
  DegenerateSpectrum,
  AsymmetricGrid,
  CflViolation,
  PositivityLoss,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Selects between the time-symmetric equations, where friction and
/// diffusion carry a sgn(t) factor, and the conventional one-sided form.
enum class Dynamics { TimeSymmetric, Standard };

/// sgn(t) with sgn(0) = 0. Integrators never evaluate it at t = 0; they
/// resolve the branch from the propagation direction.
constexpr double sgn(double t) noexcept {
  return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
}

/// Uniform grid t_k = k * dt for k in [-steps_backward, steps_forward].
/// Always contains t = 0, which anchors every equation in the library.
struct TimeGrid {
  double dt = 1e-3;
  long steps_backward = 0;
  long steps_forward = 0;

  static TimeGrid forward(double dt, double t_max);
  static TimeGrid symmetric(double dt, double t_max);
  static TimeGrid span(double dt, double t_min, double t_max);

  long size() const noexcept { return steps_backward + steps_forward + 1; }
  long origin_index() const noexcept { return steps_backward; }
  double time(long index) const noexcept {
    return static_cast<double>(index - steps_backward) * dt;
  }
  std::vector<double> times() const;
};

}  // namespace timesym

#endif  // TIMESYM_COMMON_HPP
