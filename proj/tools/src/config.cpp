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

#include "timesym_app/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace timesym::app {

ConfigError::ConfigError(std::string path, const std::string& message)
    : std::runtime_error((path.empty() ? std::string("config") : path) + ": " + message),
      path_(std::move(path)) {}

namespace {

constexpr std::pair<std::string_view, Scenario> kScenarios[] = {
    {"ExactBath", Scenario::ExactBath},
    {"GLE", Scenario::GLE},
    {"MarkovLangevin", Scenario::MarkovLangevin},
    {"BrownianEntropy", Scenario::BrownianEntropy},
    {"Lindblad", Scenario::Lindblad},
    {"Pauli", Scenario::Pauli},
    {"Wigner", Scenario::Wigner},
    {"SymmetryAudit", Scenario::SymmetryAudit},
};

std::string type_name(const Json& j) { return j.type_name(); }

}  // namespace

const char* scenario_name(Scenario s) noexcept {
  for (const auto& [name, value] : kScenarios)
    if (value == s) return name.data();
  return "?";
}

std::optional<Scenario> parse_scenario(std::string_view name) {
  for (const auto& [n, value] : kScenarios)
    if (n == name) return value;
  return std::nullopt;
}

Node::Node(const Json& value, std::string path) : value_(&value), path_(std::move(path)) {}

std::string Node::child_path(std::string_view key) const {
  return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
}

void Node::fail(const std::string& message) const { throw ConfigError(path_, message); }

void Node::fail(std::string_view key, const std::string& message) const {
  throw ConfigError(child_path(key), message);
}

bool Node::has(std::string_view key) const {
  return value_->is_object() && value_->contains(key);
}

Node Node::at(std::string_view key) const {
  if (!value_->is_object()) fail("expected an object, found " + type_name(*value_));
  auto it = value_->find(key);
  if (it == value_->end()) fail(key, "required field is missing");
  return Node(*it, child_path(key));
}

std::optional<Node> Node::find(std::string_view key) const {
  if (!has(key)) return std::nullopt;
  return at(key);
}

double Node::as_number() const {
  if (!value_->is_number()) fail("expected a number, found " + type_name(*value_));
  const double v = value_->get<double>();
  if (!std::isfinite(v)) fail("must be finite");
  return v;
}

double Node::number(std::string_view key) const { return at(key).as_number(); }

double Node::number(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

double Node::positive(std::string_view key) const {
  const double v = number(key);
  if (!(v > 0.0)) fail(key, "must be > 0");
  return v;
}

double Node::positive(std::string_view key, double fallback) const {
  return has(key) ? positive(key) : fallback;
}

double Node::non_negative(std::string_view key, double fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  if (v < 0.0) fail(key, "must be >= 0");
  return v;
}

std::int64_t Node::integer(std::string_view key) const {
  const Node n = at(key);
  if (!n.json().is_number_integer()) fail(key, "expected an integer, found " + type_name(n.json()));
  return n.json().get<std::int64_t>();
}

std::int64_t Node::integer(std::string_view key, std::int64_t fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool Node::boolean(std::string_view key, bool fallback) const {
  if (!has(key)) return fallback;
  const Node n = at(key);
  if (!n.json().is_boolean()) fail(key, "expected true or false, found " + type_name(n.json()));
  return n.json().get<bool>();
}

std::string Node::string(std::string_view key) const {
  const Node n = at(key);
  if (!n.json().is_string()) fail(key, "expected a string, found " + type_name(n.json()));
  return n.json().get<std::string>();
}

std::string Node::string(std::string_view key, std::string fallback) const {
  return has(key) ? string(key) : fallback;
}

std::vector<Node> Node::items() const {
  if (!value_->is_array()) fail("expected an array, found " + type_name(*value_));
  std::vector<Node> out;
  for (std::size_t i = 0; i < value_->size(); ++i)
    out.emplace_back((*value_)[i], path_ + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<double> Node::numbers(std::string_view key) const {
  std::vector<double> out;
  for (const Node& n : at(key).items()) out.push_back(n.as_number());
  return out;
}

void Node::allow_only(std::initializer_list<std::string_view> allowed) const {
  if (!value_->is_object()) fail("expected an object, found " + type_name(*value_));
  for (auto it = value_->begin(); it != value_->end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(it.key(), "unknown field");
  }
}

Node RunConfig::parameters() const { return root().at("parameters"); }

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", std::string("not valid JSON: ") + e.what());
  }
}

RunConfig parse_run_config(const Json& raw) {
  RunConfig cfg;
  cfg.raw = raw;
  const Node root = cfg.root();
  root.allow_only({"config_version", "scenario", "seed", "output", "dynamics", "grid",
                   "ensemble", "parameters", "audit", "description"});

  const auto version = root.integer("config_version");
  if (version != kConfigVersion)
    root.fail("config_version", "unsupported version " + std::to_string(version) +
                                    " (this build reads " + std::to_string(kConfigVersion) + ")");

  const std::string name = root.string("scenario");
  const auto scenario = parse_scenario(name);
  if (!scenario) root.fail("scenario", "unknown scenario '" + name + "'");
  cfg.scenario = *scenario;

  const auto seed = root.integer("seed", 0);
  if (seed < 0) root.fail("seed", "must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.output = root.string("output", cfg.output);
  cfg.dynamics = root.choice<Dynamics>(
      "dynamics", {{"time_symmetric", Dynamics::TimeSymmetric}, {"standard", Dynamics::Standard}},
      Dynamics::TimeSymmetric);

  if (auto ens = root.find("ensemble")) {
    ens->allow_only({"members"});
    const auto m = ens->integer("members", 1);
    if (m < 1 || m > 1000000) ens->fail("members", "must be in [1, 1000000]");
    cfg.members = static_cast<int>(m);
  }
  if (cfg.scenario != Scenario::SymmetryAudit && !root.has("parameters"))
    root.at("parameters");
  return cfg;
}

Potential parse_potential(const Node& parent) {
  const auto node = parent.find("potential");
  if (!node) return FreePotential{};
  const std::string kind = node->string("type");
  if (kind == "free") {
    node->allow_only({"type"});
    return FreePotential{};
  }
  if (kind == "harmonic") {
    node->allow_only({"type", "omega0"});
    return HarmonicPotential{node->positive("omega0")};
  }
  if (kind == "quartic") {
    node->allow_only({"type", "a", "b"});
    return QuarticPotential{node->number("a", 0.0), node->number("b", 0.0)};
  }
  if (kind == "tabulated") {
    node->allow_only({"type", "x", "V"});
    return validated(node->path(), [&] {
      return Potential(TabulatedPotential(node->numbers("x"), node->numbers("V")));
    });
  }
  node->fail("type", "unknown potential '" + kind + "' (expected free, harmonic, quartic, tabulated)");
}

Json potential_to_json(const Potential& v) {
  struct Visitor {
    Json operator()(const FreePotential&) const { return Json{{"type", "free"}}; }
    Json operator()(const HarmonicPotential& p) const {
      return Json{{"type", "harmonic"}, {"omega0", p.omega0}};
    }
    Json operator()(const QuarticPotential& p) const {
      return Json{{"type", "quartic"}, {"a", p.a}, {"b", p.b}};
    }
    Json operator()(const TabulatedPotential&) const { return Json{{"type", "tabulated"}}; }
  };
  return std::visit(Visitor{}, v);
}

SystemSpec parse_system(const Node& params) {
  SystemSpec sys;
  sys.mass = params.positive("M");
  sys.potential = parse_potential(params);
  validated(params.path(), [&] { sys.validate(); });
  return sys;
}

namespace {

Statistics parse_statistics(const Node& n) {
  return n.choice<Statistics>("statistics",
                              {{"classical", Statistics::Classical}, {"quantum", Statistics::Quantum}},
                              Statistics::Classical);
}

}  // namespace

BathSpec parse_bath(const Node& bath, double default_mass) {
  const std::string kind = bath.string("kind");
  const double kT = bath.non_negative("kT", 0.0);
  if (!bath.has("kT")) bath.at("kT");
  const Statistics stats = parse_statistics(bath);
  const double hbar = bath.positive("hbar", 1.0);
  if (kind == "discrete") {
    bath.allow_only({"kind", "kT", "statistics", "hbar", "oscillators"});
    std::vector<Oscillator> bank;
    for (const Node& o : bath.at("oscillators").items()) {
      o.allow_only({"omega", "m", "g"});
      bank.push_back({o.positive("omega"), o.positive("m", 1.0), o.number("g")});
    }
    return validated(bath.path(), [&] { return BathSpec::discrete(bank, kT, stats, hbar); });
  }
  if (kind == "ohmic") {
    bath.allow_only({"kind", "kT", "statistics", "hbar", "gamma", "mass", "cutoff", "modes"});
    SpectralDensity d{bath.non_negative("gamma", 0.0), bath.positive("mass", default_mass),
                      bath.positive("cutoff")};
    if (!bath.has("gamma")) bath.at("gamma");
    auto spec = validated(bath.path(), [&] { return BathSpec::ohmic(d, kT, stats, hbar); });
    if (bath.has("modes")) {
      const auto n = bath.integer("modes");
      if (n < 1 || n > 100000) bath.fail("modes", "must be in [1, 100000]");
      return validated(bath.path(), [&] { return discretize_ohmic(spec, static_cast<int>(n)); });
    }
    return spec;
  }
  bath.fail("kind", "unknown bath kind '" + kind + "' (expected discrete, ohmic)");
}

Json bath_to_json(const BathSpec& bath) {
  Json j;
  j["kind"] = bath.is_discrete() ? "discrete" : "ohmic";
  j["kT"] = bath.kT();
  j["statistics"] = bath.statistics() == Statistics::Quantum ? "quantum" : "classical";
  j["hbar"] = bath.hbar();
  if (bath.is_discrete()) {
    Json bank = Json::array();
    for (const auto& o : bath.oscillators())
      bank.push_back(Json{{"omega", o.frequency}, {"m", o.mass}, {"g", o.coupling}});
    j["oscillators"] = std::move(bank);
  } else {
    const auto& d = bath.density();
    j["gamma"] = d.gamma;
    j["mass"] = d.mass;
    j["cutoff"] = d.cutoff;
  }
  return j;
}

TimeGrid parse_time_grid(const Node& root) {
  const Node g = root.at("grid");
  g.allow_only({"dt", "t_min", "t_max"});
  const double dt = g.positive("dt");
  const double t_min = g.number("t_min", 0.0);
  const double t_max = g.number("t_max");
  if (t_min > 0.0) g.fail("t_min", "must be <= 0 (every grid contains t = 0)");
  if (t_max < 0.0) g.fail("t_max", "must be >= 0 (every grid contains t = 0)");
  if ((t_max - t_min) / dt > 5e7) g.fail("dt", "grid would exceed 5e7 points");
  return validated(g.path(), [&] { return TimeGrid::span(dt, t_min, t_max); });
}

CMatrix parse_matrix(const Node& node) {
  const auto rows = node.items();
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) node.fail("matrix is empty");
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto cols = rows[static_cast<std::size_t>(i)].items();
    if (static_cast<Eigen::Index>(cols.size()) != n)
      rows[static_cast<std::size_t>(i)].fail("row has " + std::to_string(cols.size()) +
                                              " entries, expected " + std::to_string(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      const Node& e = cols[static_cast<std::size_t>(k)];
      if (e.json().is_array()) {
        const auto parts = e.items();
        if (parts.size() != 2) e.fail("complex entries are [re, im]");
        m(i, k) = Complex(parts[0].as_number(), parts[1].as_number());
      } else {
        m(i, k) = Complex(e.as_number(), 0.0);
      }
    }
  }
  return m;
}

}  // namespace timesym::app
