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

#ifndef TIMESYM_POTENTIAL_HPP
#define TIMESYM_POTENTIAL_HPP

#include <string>
#include <variant>
#include <vector>

namespace timesym {

struct FreePotential {};

/// V = M w0^2 Q^2 / 2.
struct HarmonicPotential {
  double omega0 = 1.0;
};

/// V = a Q^2 / 2 + b Q^4 / 4.
struct QuarticPotential {
  double a = 0.0;
  double b = 0.0;
};

/// Natural cubic spline through (x_i, V_i); derivatives come from the spline.
class TabulatedPotential {
 public:
  TabulatedPotential(std::vector<double> x, std::vector<double> v);

  double evaluate(double q, int order) const;
  double x_min() const noexcept { return x_.front(); }
  double x_max() const noexcept { return x_.back(); }

 private:
  std::vector<double> x_;
  std::vector<double> v_;
  std::vector<double> second_;  // spline second derivatives at the nodes
};

using Potential =
    std::variant<FreePotential, HarmonicPotential, QuarticPotential, TabulatedPotential>;

/// d^order V / dQ^order at q, for order 0..7. `mass` scales the harmonic case.
double potential_derivative(const Potential& v, double mass, double q, int order);

/// Highest derivative order that can be nonzero, or -1 when unbounded
/// (tabulated splines).
int potential_degree(const Potential& v);

std::string potential_name(const Potential& v);

/// System degree of freedom: H_S = P^2 / 2M + V(Q).
struct SystemSpec {
  double mass = 1.0;
  Potential potential = FreePotential{};

  void validate() const;
  double energy(double q, double p) const;
  /// V'(q)
  double gradient(double q) const { return potential_derivative(potential, mass, q, 1); }
};

}  // namespace timesym

#endif  // TIMESYM_POTENTIAL_HPP
