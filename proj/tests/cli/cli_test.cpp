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

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "timesym/csv.hpp"
#include "timesym_app/app.hpp"
#include "timesym_app/audit.hpp"
#include "timesym_app/config.hpp"
#include "timesym_app/manifest.hpp"
#include "timesym_app/models.hpp"

namespace fs = std::filesystem;
using namespace timesym;
using namespace timesym::app;

namespace {

const fs::path kConfigs = TIMESYM_CONFIG_DIR;

const fs::path& scratch_root() {
  static const struct Root {
    fs::path path = fs::temp_directory_path() / ("timesym_cli_" + std::to_string(::getpid()));
    ~Root() {
      std::error_code ec;
      fs::remove_all(path, ec);
    }
  } root;
  return root.path;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = scratch_root() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + TIMESYM_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Json load(const fs::path& p) { return read_json_file(p); }

void save(const fs::path& p, const Json& j) { std::ofstream(p) << j.dump(2); }

std::string error_path(const Json& raw) {
  try {
    const auto cfg = parse_run_config(raw);
    plan_audit(cfg);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "";
}

const CheckResult& find_check(const RunManifest& m, const std::string& name) {
  for (const auto& c : m.checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("missing mass is a validation error naming parameters.M") {
  const auto dir = scratch("missing_mass");
  Json cfg = load(kConfigs / "brownian_entropy.json");
  cfg["parameters"].erase("M");
  save(dir / "config.json", cfg);
  CHECK(run_cli("run \"" + (dir / "config.json").string() + "\" --out \"" + (dir / "out").string() + "\"") == 2);
  const auto m = read_manifest(dir / "out" / "manifest.json");
  CHECK(m.status == RunStatus::ValidationError);
  CHECK(m.error.find("parameters.M") != std::string::npos);
  CHECK(m.outputs.empty());
}

TEST_CASE("config errors carry field paths") {
  Json base = load(kConfigs / "lindblad_three_level.json");
  SUBCASE("unknown scenario") {
    base["scenario"] = "Diffusion";
    CHECK(error_path(base) == "scenario");
  }
  SUBCASE("unsupported version") {
    base["config_version"] = 2;
    CHECK(error_path(base) == "config_version");
  }
  SUBCASE("misspelled field") {
    base["parameters"]["hbar_"] = 1.0;
    CHECK(error_path(base) == "parameters.hbar_");
  }
  SUBCASE("non-Hermitian coupling") {
    base["parameters"]["couplings"][0][0][1] = 5.0;
    CHECK(error_path(base) == "parameters.couplings[0]");
  }
  SUBCASE("ragged matrix") {
    base["parameters"]["H"][1] = Json::array({0.0, 0.7});
    CHECK(error_path(base) == "parameters.H[1]");
  }
  SUBCASE("wrong type") {
    base["parameters"]["spectral"]["kT"] = "hot";
    CHECK(error_path(base) == "parameters.spectral.kT");
  }
  SUBCASE("negative ensemble") {
    base["ensemble"] = Json{{"members", 0}};
    CHECK(error_path(base) == "ensemble.members");
  }
  SUBCASE("translation off the audit grid") {
    base["audit"] = Json{{"translation_a", 0.00025}};
    CHECK(error_path(base) == "audit.translation_a");
  }
}

TEST_CASE("unknown scenario exits with 2") {
  const auto dir = scratch("unknown_scenario");
  Json cfg = load(kConfigs / "brownian_entropy.json");
  cfg["scenario"] = "Teleport";
  save(dir / "config.json", cfg);
  CHECK(run_cli("run \"" + (dir / "config.json").string() + "\" --out \"" + (dir / "out").string() + "\"") == 2);
  CHECK(read_manifest(dir / "out" / "manifest.json").error.find("scenario") != std::string::npos);
}

TEST_CASE("unreadable config still leaves a manifest") {
  const auto dir = scratch("unreadable");
  CHECK(run_cli("run \"" + (dir / "absent.json").string() + "\" --out \"" + (dir / "out").string() + "\"") == 2);
  CHECK(read_manifest(dir / "out" / "manifest.json").status == RunStatus::ValidationError);
}

TEST_CASE("entropy curve is symmetric and vanishes at the origin") {
  const auto dir = scratch("entropy");
  CHECK(run_cli("run \"" + (kConfigs / "brownian_entropy.json").string() + "\" --out \"" + dir.string() + "\"") == 0);
  std::ifstream in(dir / "entropy.csv", std::ios::binary);
  std::vector<std::string> header;
  const auto rows = csv::read(in, &header);
  REQUIRE(header.at(0) == "t");
  REQUIRE(header.at(1) == "S_vN");
  REQUIRE(rows.size() == 801);
  const std::size_t origin = rows.size() / 2;
  CHECK(rows[origin][0] == 0.0);
  CHECK(std::abs(rows[origin][1]) <= 1e-9);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    CHECK(rows[k][0] == doctest::Approx(-rows[rows.size() - 1 - k][0]).epsilon(1e-12));
    CHECK(std::abs(rows[k][1] - rows[rows.size() - 1 - k][1]) <= 1e-9);
  }
  CHECK(rows.back()[1] > rows[origin + 200][1]);
}

TEST_CASE("repeated runs give byte-identical CSV") {
  const auto a = scratch("repeat_a");
  const auto b = scratch("repeat_b");
  const auto cfg = (kConfigs / "markov_ensemble.json").string();
  REQUIRE(run_cli("run \"" + cfg + "\" --out \"" + a.string() + "\"") == 0);
  REQUIRE(run_cli("run \"" + cfg + "\" --out \"" + b.string() + "\" --threads 3") == 0);
  const auto m = read_manifest(a / "manifest.json");
  REQUIRE(m.outputs.size() == 8);
  for (const auto& f : m.outputs) CHECK(slurp(a / f) == slurp(b / f));
  // Members differ from one another: seed + index.
  CHECK(slurp(a / m.outputs[0]) != slurp(a / m.outputs[1]));
}

TEST_CASE("seed override changes stochastic output") {
  const auto a = scratch("seed_a");
  const auto b = scratch("seed_b");
  const auto cfg = (kConfigs / "markov_ensemble.json").string();
  REQUIRE(run_cli("run \"" + cfg + "\" --out \"" + a.string() + "\" --seed 12") == 0);
  REQUIRE(run_cli("run \"" + cfg + "\" --out \"" + b.string() + "\"") == 0);
  CHECK(read_manifest(a / "manifest.json").seed == 12);
  // Member 0 with seed 12 is member 1 with seed 11.
  CHECK(slurp(a / "trajectory_0.csv") == slurp(b / "trajectory_1.csv"));
}

TEST_CASE("manifests round-trip and list existing outputs") {
  const auto dir = scratch("manifest");
  REQUIRE(run_cli("run \"" + (kConfigs / "pauli_two_state.json").string() + "\" --out \"" + dir.string() + "\"") == 0);
  const Json raw = load(dir / "manifest.json");
  const RunManifest m = manifest_from_json(raw);
  CHECK(to_json(m) == raw);
  CHECK(manifest_from_json(to_json(m)) == m);
  CHECK(m.config == load(kConfigs / "pauli_two_state.json"));
  CHECK(m.config_version == kConfigVersion);
  CHECK(m.config_dialect == "json");
  CHECK(!m.library_version.empty());
  CHECK(m.wall_time_s >= 0.0);
  for (const auto& f : m.outputs) CHECK(fs::exists(dir / f));
  CHECK(!m.checks.empty());
}

TEST_CASE("CSV output uses a dot separator and fixed columns") {
  const auto dir = scratch("columns");
  REQUIRE(run_cli("run \"" + (kConfigs / "lindblad_three_level.json").string() + "\" --out \"" + dir.string() + "\"") == 0);
  std::ifstream in(dir / "density.csv", std::ios::binary);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header.rfind("t,re(rho_00),im(rho_00),re(rho_01)", 0) == 0);
  CHECK(first.rfind("-5,", 0) == 0);
  CHECK(std::count(header.begin(), header.end(), ',') == 18);
  CHECK(std::count(first.begin(), first.end(), ',') == 18);
}

TEST_CASE("default audit on two-level damping passes") {
  const auto dir = scratch("audit_default");
  CHECK(run_cli("audit \"" + (kConfigs / "symmetry_audit.json").string() + "\" --out \"" + dir.string() + "\"") == 0);
  const auto m = read_manifest(dir / "manifest.json");
  CHECK(m.status == RunStatus::Ok);
  CHECK(m.checks.size() == 8);
  for (const auto& c : m.checks) CHECK_MESSAGE(c.passed, c.name);
  const Json report = load(dir / "audit.json");
  CHECK(report.at("all_passed").get<bool>());
  for (const auto& c : report.at("checks")) {
    CHECK(c.contains("name"));
    CHECK(c.contains("defect"));
    CHECK(c.contains("threshold"));
    CHECK(c.contains("passed"));
  }
}

TEST_CASE("standard equations fail time reversal but keep forward semigroups") {
  const auto dir = scratch("audit_standard");
  CHECK(run_cli("audit \"" + (kConfigs / "symmetry_audit_standard.json").string() + "\" --out \"" + dir.string() + "\"") == 3);
  const auto m = read_manifest(dir / "manifest.json");
  CHECK(m.status == RunStatus::CheckFailed);
  CHECK_FALSE(find_check(m, "langevin.time_reversal_residual").passed);
  CHECK(find_check(m, "langevin.time_reversal_residual").defect >= 0.1);
  CHECK_FALSE(find_check(m, "lindblad.generator_time_reversal").passed);
  CHECK_FALSE(find_check(m, "phase_space.time_reversal").passed);
  CHECK(find_check(m, "lindblad.same_sign_semigroup").passed);
  CHECK(find_check(m, "pauli.same_sign_semigroup").passed);
}

TEST_CASE("translated reflection breaks the Markovian equation only") {
  const auto dir = scratch("audit_translation");
  CHECK(run_cli("audit \"" + (kConfigs / "symmetry_audit_translation.json").string() + "\" --out \"" + dir.string() + "\"") == 3);
  const auto m = read_manifest(dir / "manifest.json");
  const auto& markov = find_check(m, "langevin.translation_symmetry.markov");
  CHECK_FALSE(markov.passed);
  CHECK(markov.detail == "breaking confirmed");
  CHECK(find_check(m, "langevin.translation_symmetry.gle").passed);
  for (const auto& c : m.checks)
    if (c.name != markov.name) CHECK_MESSAGE(c.passed, c.name);
}

TEST_CASE("run and audit agree for the audit scenario") {
  const auto a = scratch("audit_run");
  const auto b = scratch("audit_cmd");
  REQUIRE(run_cli("run \"" + (kConfigs / "symmetry_audit.json").string() + "\" --out \"" + a.string() + "\"") == 0);
  REQUIRE(run_cli("audit \"" + (kConfigs / "symmetry_audit.json").string() + "\" --out \"" + b.string() + "\"") == 0);
  CHECK(slurp(a / "audit.json") == slurp(b / "audit.json"));
}

TEST_CASE("audit reads models from scenario parameters") {
  const auto cfg = parse_run_config(load(kConfigs / "lindblad_three_level.json"));
  const auto plan = plan_audit(cfg);
  CHECK(plan.lindblad.hamiltonian.dim() == 3);
  CHECK(plan.rates.has_value());
  const auto rep = execute_audit(plan);
  CHECK(rep.passed());
}

TEST_CASE("GLE run matches the exact bank") {
  const auto dir = scratch("gle");
  CHECK(run_cli("run \"" + (kConfigs / "gle.json").string() + "\" --out \"" + dir.string() + "\"") == 0);
  const auto m = read_manifest(dir / "manifest.json");
  CHECK(find_check(m, "gle.matches_exact").defect < 1e-4);
}

TEST_CASE("standard Markovian run reports a failed reversal check") {
  const auto dir = scratch("markov_standard");
  Json cfg = load(kConfigs / "markov_langevin.json");
  cfg["dynamics"] = "standard";
  save(dir / "config.json", cfg);
  CHECK(run_cli("run \"" + (dir / "config.json").string() + "\" --out \"" + (dir / "out").string() + "\"") == 3);
  const auto m = read_manifest(dir / "out" / "manifest.json");
  CHECK(fs::exists(dir / "out" / "trajectory.csv"));
  CHECK(find_check(m, "langevin.time_reversal_residual").defect >= 0.1);
}

TEST_CASE("bath records round-trip through the config format") {
  const Json discrete = {{"kind", "discrete"},
                         {"kT", 0.5},
                         {"statistics", "quantum"},
                         {"hbar", 1.0},
                         {"oscillators", Json::array({Json{{"omega", 1.5}, {"m", 2.0}, {"g", -0.25}},
                                                      Json{{"omega", 0.3}, {"m", 1.0}, {"g", 0.5}}})}};
  const auto bath = parse_bath(Node(discrete, "bath"), 1.0);
  CHECK(bath_to_json(bath) == discrete);
  const Json ohmic = {{"kind", "ohmic"}, {"kT", 1.0}, {"statistics", "classical"},
                      {"hbar", 1.0},     {"gamma", 0.7}, {"mass", 2.0}, {"cutoff", 30.0}};
  const auto cont = parse_bath(Node(ohmic, "bath"), 1.0);
  CHECK(bath_to_json(cont) == ohmic);
  Json with_modes = ohmic;
  with_modes["modes"] = 16;
  const auto bank = parse_bath(Node(with_modes, "bath"), 1.0);
  REQUIRE(bank.is_discrete());
  CHECK(bank.oscillators().size() == 16);
  CHECK(bath_to_json(parse_bath(Node(bath_to_json(bank), "bath"), 1.0)) == bath_to_json(bank));
}

TEST_CASE("complex matrix entries") {
  const Json m = Json::array({Json::array({1.0, Json::array({0.0, -2.0})}),
                              Json::array({Json::array({0.0, 2.0}), 3.0})});
  const CMatrix c = parse_matrix(Node(m, "H"));
  CHECK(c(0, 1) == Complex(0.0, -2.0));
  CHECK(c(1, 0) == Complex(0.0, 2.0));
  CHECK(c(1, 1) == Complex(3.0, 0.0));
}

TEST_CASE("every sample config validates") {
  for (const auto& entry : fs::directory_iterator(kConfigs)) {
    if (entry.path().extension() != ".json") continue;
    INFO(entry.path().filename().string());
    const auto cfg = parse_run_config(load(entry.path()));
    CHECK_NOTHROW(plan_audit(cfg));
  }
}

}  // TEST_SUITE
