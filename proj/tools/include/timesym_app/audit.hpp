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

#ifndef TIMESYM_APP_AUDIT_HPP
#define TIMESYM_APP_AUDIT_HPP

#include <optional>
#include <string>
#include <vector>

#include "timesym_app/config.hpp"
#include "timesym_app/manifest.hpp"
#include "timesym_app/models.hpp"

namespace timesym::app {

struct AuditReport {
  std::string model;  ///< where the audited models came from
  Dynamics dynamics = Dynamics::TimeSymmetric;
  double translation_a = 0.0;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// Validated inputs of the symmetry battery.
struct AuditPlan {
  std::string model;
  Dynamics dynamics = Dynamics::TimeSymmetric;
  double translation_a = 0.0;
  std::uint64_t seed = 0;
  LindbladModel lindblad;
  std::optional<RateMatrix> rates;  ///< absent for degenerate spectra
  MarkovModel markov;
  double markov_half_span = 5.0;
  double markov_dt = 1e-3;
  BathModel gle;
  double gle_half_span = 3.0;
  double gle_dt = 1e-3;
  bool phase_space = true;
  WignerModel wigner;
};

/// Builds the plan; throws ConfigError.
AuditPlan plan_audit(const RunConfig& cfg);
AuditReport execute_audit(const AuditPlan& plan);

/// Symmetry battery: time-reversal residual of the Markovian equation,
/// Lindblad and Pauli semigroup checks, generator time reversal, mixed-sign
/// irreversibility, translation symmetry of the Markovian and generalized
/// Langevin equations at `audit.translation_a`, and phase-space reversal.
/// Models come from the scenario parameters where the scenario defines them
/// and from built-in defaults otherwise. Throws ConfigError.
inline AuditReport run_audit(const RunConfig& cfg) { return execute_audit(plan_audit(cfg)); }

Json to_json(const AuditReport& r);

}  // namespace timesym::app

#endif  // TIMESYM_APP_AUDIT_HPP
