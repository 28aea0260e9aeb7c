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

#include "timesym_app/manifest.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

namespace timesym::app {

namespace {

constexpr std::pair<RunStatus, const char*> kStatus[] = {
    {RunStatus::Ok, "ok"},
    {RunStatus::ValidationError, "validation_error"},
    {RunStatus::CheckFailed, "check_failed"},
    {RunStatus::Error, "error"},
};

RunStatus status_from_name(const std::string& s) {
  for (const auto& [value, name] : kStatus)
    if (s == name) return value;
  throw std::runtime_error("manifest: unknown status '" + s + "'");
}

}  // namespace

const char* status_name(RunStatus s) noexcept {
  for (const auto& [value, name] : kStatus)
    if (value == s) return name;
  return "?";
}

int exit_code(RunStatus s) noexcept {
  switch (s) {
    case RunStatus::Ok: return 0;
    case RunStatus::ValidationError: return 2;
    case RunStatus::CheckFailed: return 3;
    case RunStatus::Error: return 1;
  }
  return 1;
}

Json to_json(const CheckResult& c) {
  Json j{{"name", c.name}, {"defect", c.defect}, {"threshold", c.threshold}, {"passed", c.passed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

CheckResult check_from_json(const Json& j) {
  CheckResult c;
  c.name = j.at("name").get<std::string>();
  // Non-finite defects serialize as null.
  c.defect = j.at("defect").is_null() ? std::numeric_limits<double>::infinity()
                                      : j.at("defect").get<double>();
  c.threshold = j.at("threshold").get<double>();
  c.passed = j.at("passed").get<bool>();
  if (j.contains("detail")) c.detail = j.at("detail").get<std::string>();
  return c;
}

Json to_json(const RunManifest& m) {
  Json checks = Json::array();
  for (const auto& c : m.checks) checks.push_back(to_json(c));
  return Json{{"manifest_version", m.manifest_version},
              {"tool", m.tool},
              {"library_version", m.library_version},
              {"config_dialect", m.config_dialect},
              {"config_version", m.config_version},
              {"command", m.command},
              {"config_path", m.config_path},
              {"scenario", m.scenario},
              {"seed", m.seed},
              {"threads", m.threads},
              {"status", status_name(m.status)},
              {"exit_code", exit_code(m.status)},
              {"error", m.error},
              {"wall_time_s", m.wall_time_s},
              {"outputs", m.outputs},
              {"checks", std::move(checks)},
              {"config", m.config}};
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  m.manifest_version = j.at("manifest_version").get<int>();
  m.tool = j.at("tool").get<std::string>();
  m.library_version = j.at("library_version").get<std::string>();
  m.config_dialect = j.at("config_dialect").get<std::string>();
  m.config_version = j.at("config_version").get<int>();
  m.command = j.at("command").get<std::string>();
  m.config_path = j.at("config_path").get<std::string>();
  m.scenario = j.at("scenario").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.threads = j.at("threads").get<int>();
  m.status = status_from_name(j.at("status").get<std::string>());
  m.error = j.at("error").get<std::string>();
  m.wall_time_s = j.at("wall_time_s").get<double>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  for (const auto& c : j.at("checks")) m.checks.push_back(check_from_json(c));
  m.config = j.at("config");
  return m;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << to_json(m).dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
  return manifest_from_json(read_json_file(path));
}

}  // namespace timesym::app
