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

#ifndef TIMESYM_APP_MODELS_HPP
#define TIMESYM_APP_MODELS_HPP

#include <optional>
#include <vector>

#include "timesym/bath.hpp"
#include "timesym/brownian.hpp"
#include "timesym/langevin.hpp"
#include "timesym/lindblad.hpp"
#include "timesym/pauli.hpp"
#include "timesym/phase_space.hpp"
#include "timesym/potential.hpp"
#include "timesym/quantum.hpp"
#include "timesym_app/config.hpp"

// Typed parameter records built from the `parameters` section. Each parser
// runs the owning module's validation, so a record that parses is runnable.

namespace timesym::app {

/// System coupled to an explicit bath (ExactBath, GLE).
struct BathModel {
  SystemSpec system;
  BathSpec bath = BathSpec::ohmic(SpectralDensity{}, 0.0);
  double q0 = 0.0;
  double p0 = 0.0;
};
BathModel parse_bath_model(const Node& params, std::initializer_list<std::string_view> extra_keys);

struct MarkovModel {
  SystemSpec system;
  double gamma = 1.0;  ///< friction rate; the equation uses gamma M
  double kT = 0.0;
  double q0 = 0.0;
  double p0 = 1.0;
  bool white_noise = false;
  double gamma_m() const { return gamma * system.mass; }
};
MarkovModel parse_markov_model(const Node& params);

struct BrownianModel {
  BrownianParams params;
  ClosedFormVariant variant = ClosedFormVariant::MasterEquation;
};
BrownianModel parse_brownian_model(const Node& params);

struct LindbladModel {
  double hbar = 1.0;
  HermitianOperator hamiltonian{CMatrix::Zero(1, 1)};
  std::vector<HermitianOperator> couplings;
  EigenoperatorSet eig;
  SpectralFunctionTable table{1};
  Superoperator generator;
  std::optional<double> kT;  ///< set for thermal spectral records
};
/// `rho0` is not part of the generator record; see parse_initial_density.
LindbladModel parse_lindblad_model(const Node& params,
                                   std::initializer_list<std::string_view> extra_keys);
DensityMatrix parse_initial_density(const Node& params, const LindbladModel& model);

/// Two-level system with gap 1, sigma_x coupling and a thermal bosonic bath
/// (kappa 0.5, kT 1, cutoff 20).
LindbladModel builtin_two_level_damping();

struct PauliModel {
  RateMatrix rates;
  RVector p0;
};
PauliModel parse_pauli_model(const Node& params);

struct WignerModel {
  PdeParams pde;
  GaussianState initial;
  double x_max = 6.0;
  double p_max = 6.0;
  int nx = 49;
  int np = 49;
  int snapshots = 1;
  bool reversal_check = false;
  bool dt_given = false;
};
WignerModel parse_wigner_model(const Node& params, Dynamics dynamics);

}  // namespace timesym::app

#endif  // TIMESYM_APP_MODELS_HPP
