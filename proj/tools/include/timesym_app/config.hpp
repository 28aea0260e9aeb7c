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

#ifndef TIMESYM_APP_CONFIG_HPP
#define TIMESYM_APP_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "timesym/bath.hpp"
#include "timesym/common.hpp"
#include "timesym/potential.hpp"

namespace timesym::app {

using Json = nlohmann::ordered_json;

/// Version of the JSON config dialect accepted by this build.
inline constexpr int kConfigVersion = 1;

/// User error in a config, tagged with the dotted path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

enum class Scenario {
  ExactBath,
  GLE,
  MarkovLangevin,
  BrownianEntropy,
  Lindblad,
  Pauli,
  Wigner,
  SymmetryAudit,
};

const char* scenario_name(Scenario s) noexcept;
std::optional<Scenario> parse_scenario(std::string_view name);

/// Read-only view of a JSON value that knows its own path, so every lookup
/// failure can name the field.
class Node {
 public:
  Node(const Json& value, std::string path);

  const Json& json() const noexcept { return *value_; }
  const std::string& path() const noexcept { return path_; }
  std::string child_path(std::string_view key) const;

  bool has(std::string_view key) const;
  Node at(std::string_view key) const;
  std::optional<Node> find(std::string_view key) const;

  double number(std::string_view key) const;
  double number(std::string_view key, double fallback) const;
  double positive(std::string_view key) const;
  double positive(std::string_view key, double fallback) const;
  double non_negative(std::string_view key, double fallback) const;
  std::int64_t integer(std::string_view key) const;
  std::int64_t integer(std::string_view key, std::int64_t fallback) const;
  bool boolean(std::string_view key, bool fallback) const;
  std::string string(std::string_view key) const;
  std::string string(std::string_view key, std::string fallback) const;
  std::vector<double> numbers(std::string_view key) const;

  double as_number() const;
  std::vector<Node> items() const;

  /// Picks one of `options` by string value.
  template <class E>
  E choice(std::string_view key, std::initializer_list<std::pair<std::string_view, E>> options,
           std::optional<E> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      at(key);  // throws "required"
    }
    const std::string v = string(key);
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (name == v) return value;
      allowed += allowed.empty() ? "" : ", ";
      allowed += name;
    }
    fail(key, "unknown value '" + v + "' (expected one of: " + allowed + ")");
  }

  /// Rejects keys outside `allowed`, which catches misspelled fields.
  void allow_only(std::initializer_list<std::string_view> allowed) const;

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail(std::string_view key, const std::string& message) const;

 private:
  const Json* value_;
  std::string path_;
};

/// Top-level fields shared by every scenario.
struct RunConfig {
  Json raw;
  Scenario scenario = Scenario::SymmetryAudit;
  std::uint64_t seed = 0;
  std::string output = "timesym_out";
  Dynamics dynamics = Dynamics::TimeSymmetric;
  int members = 1;

  Node root() const { return Node(raw, ""); }
  Node parameters() const;
  bool has_parameters() const { return raw.contains("parameters"); }
};

Json read_json_file(const std::filesystem::path& path);
RunConfig parse_run_config(const Json& raw);

/// Runs `fn` and rethrows library argument errors as ConfigError at `path`.
template <class F>
auto validated(const std::string& path, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PositivityLoss) throw;
    throw ConfigError(path, e.what());
  }
}

Potential parse_potential(const Node& parent);
Json potential_to_json(const Potential& v);
SystemSpec parse_system(const Node& params);

/// Bath record; `default_mass` fills the Ohmic mass when omitted.
BathSpec parse_bath(const Node& bath, double default_mass);
Json bath_to_json(const BathSpec& bath);

/// Grid from the top-level `grid` record: dt plus t_min/t_max.
TimeGrid parse_time_grid(const Node& root);

/// Square matrix of numbers or [re, im] pairs.
CMatrix parse_matrix(const Node& node);

}  // namespace timesym::app

#endif  // TIMESYM_APP_CONFIG_HPP
