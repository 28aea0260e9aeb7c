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

#ifndef TIMESYM_APP_MANIFEST_HPP
#define TIMESYM_APP_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "timesym_app/config.hpp"

namespace timesym::app {

/// One numerical check. `passed` is stored rather than recomputed because
/// some checks pass when the defect is large (irreversibility) or compare
/// against a data-dependent threshold.
struct CheckResult {
  std::string name;
  double defect = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;

  bool operator==(const CheckResult&) const = default;
};

Json to_json(const CheckResult& c);
CheckResult check_from_json(const Json& j);

enum class RunStatus { Ok, ValidationError, CheckFailed, Error };

const char* status_name(RunStatus s) noexcept;
int exit_code(RunStatus s) noexcept;

/// Provenance record written next to every set of outputs.
struct RunManifest {
  int manifest_version = 1;
  std::string tool = "timesym";
  std::string library_version;
  std::string config_dialect = "json";
  int config_version = kConfigVersion;
  std::string command;
  std::string config_path;
  std::string scenario;
  std::uint64_t seed = 0;
  int threads = 1;
  RunStatus status = RunStatus::Ok;
  std::string error;
  double wall_time_s = 0.0;
  std::vector<std::string> outputs;
  std::vector<CheckResult> checks;
  Json config;

  bool operator==(const RunManifest&) const = default;
};

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace timesym::app

#endif  // TIMESYM_APP_MANIFEST_HPP
