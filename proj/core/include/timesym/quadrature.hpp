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

#ifndef TIMESYM_QUADRATURE_HPP
#define TIMESYM_QUADRATURE_HPP

#include <functional>

#include "timesym/common.hpp"

namespace timesym::quad {

/// Adaptive Gauss-Kronrod (61 point) on [a, b]; a > b gives the oriented
/// integral.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12);

Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b,
                          double rel_tol = 1e-12);

/// Splits [a, b] into pieces no longer than half a period of `omega` before
/// integrating each piece adaptively. For integrands like g(x) cos(omega x).
double integrate_oscillatory(const std::function<double(double)>& f, double a, double b,
                             double omega, double rel_tol = 1e-12);

/// Si(x) = int_0^x sin(u)/u du.
double sine_integral(double x);

}  // namespace timesym::quad

#endif  // TIMESYM_QUADRATURE_HPP
