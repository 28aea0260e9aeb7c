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

#include "timesym/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "timesym/common.hpp"

namespace timesym {

TabulatedPotential::TabulatedPotential(std::vector<double> x, std::vector<double> v)
    : x_(std::move(x)), v_(std::move(v)) {
  const std::size_t n = x_.size();
  if (n < 3 || v_.size() != n) {
    throw Error(ErrorCode::InvalidArgument,
                "tabulated potential needs at least 3 nodes and matching values");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "tabulated potential nodes must increase");
    }
  }
  // Natural spline: tridiagonal solve for the interior second derivatives.
  second_.assign(n, 0.0);
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((v_[i + 1] - v_[i]) / h1 - (v_[i] - v_[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = x_[i] - x_[i - 1];
    const double m = lower / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    second_[i] = (rhs[i] - upper[i] * second_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

double TabulatedPotential::evaluate(double q, int order) const {
  if (q < x_.front() || q > x_.back()) {
    std::ostringstream os;
    os << "tabulated potential evaluated at " << q << " outside [" << x_.front() << ", "
       << x_.back() << "]";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), q);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, x_.size() - 2);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - q) / h;
  const double b = (q - x_[i]) / h;
  const double m0 = second_[i];
  const double m1 = second_[i + 1];
  switch (order) {
    case 0:
      return a * v_[i] + b * v_[i + 1] +
             ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
    case 1:
      return (v_[i + 1] - v_[i]) / h - (3.0 * a * a - 1.0) * h * m0 / 6.0 +
             (3.0 * b * b - 1.0) * h * m1 / 6.0;
    case 2:
      return a * m0 + b * m1;
    case 3:
      return (m1 - m0) / h;
    default:
      return 0.0;
  }
}

double potential_derivative(const Potential& v, double mass, double q, int order) {
  if (order < 0 || order > 7) {
    throw Error(ErrorCode::InvalidArgument, "potential derivative order must be in 0..7");
  }
  struct Visitor {
    double mass;
    double q;
    int order;
    double operator()(const FreePotential&) const { return 0.0; }
    double operator()(const HarmonicPotential& h) const {
      const double k = mass * h.omega0 * h.omega0;
      switch (order) {
        case 0: return 0.5 * k * q * q;
        case 1: return k * q;
        case 2: return k;
        default: return 0.0;
      }
    }
    double operator()(const QuarticPotential& p) const {
      switch (order) {
        case 0: return 0.5 * p.a * q * q + 0.25 * p.b * q * q * q * q;
        case 1: return p.a * q + p.b * q * q * q;
        case 2: return p.a + 3.0 * p.b * q * q;
        case 3: return 6.0 * p.b * q;
        case 4: return 6.0 * p.b;
        default: return 0.0;
      }
    }
    double operator()(const TabulatedPotential& t) const { return t.evaluate(q, order); }
  };
  return std::visit(Visitor{mass, q, order}, v);
}

int potential_degree(const Potential& v) {
  struct Visitor {
    int operator()(const FreePotential&) const { return 0; }
    int operator()(const HarmonicPotential&) const { return 2; }
    int operator()(const QuarticPotential& p) const { return p.b != 0.0 ? 4 : 2; }
    int operator()(const TabulatedPotential&) const { return -1; }
  };
  return std::visit(Visitor{}, v);
}

std::string potential_name(const Potential& v) {
  struct Visitor {
    std::string operator()(const FreePotential&) const { return "free"; }
    std::string operator()(const HarmonicPotential&) const { return "harmonic"; }
    std::string operator()(const QuarticPotential&) const { return "quartic"; }
    std::string operator()(const TabulatedPotential&) const { return "tabulated"; }
  };
  return std::visit(Visitor{}, v);
}

void SystemSpec::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw Error(ErrorCode::InvalidArgument, "system mass must be positive");
  }
  if (const auto* h = std::get_if<HarmonicPotential>(&potential)) {
    if (!(h->omega0 > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "harmonic frequency must be positive");
    }
  }
}

double SystemSpec::energy(double q, double p) const {
  return p * p / (2.0 * mass) + potential_derivative(potential, mass, q, 0);
}

}  // namespace timesym
