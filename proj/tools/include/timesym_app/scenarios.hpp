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

#ifndef TIMESYM_APP_SCENARIOS_HPP
#define TIMESYM_APP_SCENARIOS_HPP

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "timesym_app/config.hpp"
#include "timesym_app/manifest.hpp"

namespace timesym::app {

struct RunContext {
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ScenarioResult {
  std::vector<std::string> outputs;  ///< file names relative to out_dir
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// A scenario whose parameters have all been validated.
class PreparedScenario {
 public:
  virtual ~PreparedScenario() = default;
  virtual ScenarioResult run(const RunContext& ctx) const = 0;
};

/// Parses and validates the scenario parameters; throws ConfigError.
std::unique_ptr<PreparedScenario> prepare_scenario(const RunConfig& cfg);

/// Runs `fn(i)` for i in [0, n) on up to `threads` workers. Results must be
/// written to per-index slots so they do not depend on scheduling.
template <class F>
void parallel_for(int n, int threads, F&& fn);

}  // namespace timesym::app

#include "timesym_app/parallel.inl"

#endif  // TIMESYM_APP_SCENARIOS_HPP
