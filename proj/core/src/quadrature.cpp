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

#include "timesym/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_sf_expint.h>

namespace timesym::quad {

namespace {

constexpr unsigned kMaxDepth = 20;
constexpr long kMaxPieces = 200000;

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, rel_tol);
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, kMaxDepth,
                                                                       rel_tol);
}

Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b,
                          double rel_tol) {
  const double re = integrate([&](double x) { return f(x).real(); }, a, b, rel_tol);
  const double im = integrate([&](double x) { return f(x).imag(); }, a, b, rel_tol);
  return {re, im};
}

double integrate_oscillatory(const std::function<double(double)>& f, double a, double b,
                             double omega, double rel_tol) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_oscillatory(f, b, a, omega, rel_tol);
  const double w = std::abs(omega);
  long pieces = 1;
  if (w > 0.0) {
    const double half_period = std::numbers::pi / w;
    pieces = std::clamp<long>(static_cast<long>(std::ceil((b - a) / half_period)), 1,
                              kMaxPieces);
  }
  const double h = (b - a) / static_cast<double>(pieces);
  double sum = 0.0;
  double c = 0.0;  // Kahan compensation: the pieces alternate in sign.
  for (long i = 0; i < pieces; ++i) {
    const double lo = a + static_cast<double>(i) * h;
    const double hi = (i + 1 == pieces) ? b : lo + h;
    const double piece =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 8, rel_tol);
    const double y = piece - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double sine_integral(double x) { return gsl_sf_Si(x); }

}  // namespace timesym::quad
