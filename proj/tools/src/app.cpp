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

#include "timesym_app/app.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "timesym_app/audit.hpp"
#include "timesym_app/scenarios.hpp"

namespace timesym::app {

namespace {

void print_checks(std::ostream& log, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "  %-4s %-40s defect %.3e  threshold %.3e", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.defect, c.threshold);
    log << line;
    if (!c.detail.empty()) log << "  (" << c.detail << ")";
    log << '\n';
  }
}

}  // namespace

RunManifest execute(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  RunManifest m;
  m.library_version = TIMESYM_VERSION;
  m.command = opts.command == Command::Run ? "run" : "audit";
  m.config_path = opts.config.string();
  m.threads = opts.threads;
  std::filesystem::path out_dir = opts.out.value_or("timesym_out");

  try {
    try {
      m.config = read_json_file(opts.config);
      RunConfig cfg = parse_run_config(m.config);
      if (!opts.out) out_dir = cfg.output;
      if (opts.seed) cfg.seed = *opts.seed;
      m.scenario = scenario_name(cfg.scenario);
      m.seed = cfg.seed;

      const RunContext ctx{out_dir, cfg.seed, opts.threads};
      if (opts.command == Command::Run) {
        const auto scenario = prepare_scenario(cfg);
        std::filesystem::create_directories(out_dir);
        const auto res = scenario->run(ctx);
        m.outputs = res.outputs;
        m.checks = res.checks;
      } else {
        const auto plan = plan_audit(cfg);
        std::filesystem::create_directories(out_dir);
        const auto report = execute_audit(plan);
        std::ofstream out(out_dir / "audit.json", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + (out_dir / "audit.json").string() + "'");
        out << to_json(report).dump(2) << '\n';
        m.outputs = {"audit.json"};
        m.checks = report.checks;
      }
      m.status = RunStatus::Ok;
      for (const auto& c : m.checks)
        if (!c.passed) m.status = RunStatus::CheckFailed;
      if (m.status == RunStatus::CheckFailed) m.error = "one or more numerical checks failed";
    } catch (const ConfigError& e) {
      m.status = RunStatus::ValidationError;
      m.error = e.what();
    } catch (const Error& e) {
      // Positivity loss is a numerical outcome; every other library error at
      // this point comes from parameters the parsers could not screen.
      m.status = e.code() == ErrorCode::PositivityLoss ? RunStatus::CheckFailed
                                                       : RunStatus::ValidationError;
      m.error = std::string(to_string(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      m.status = RunStatus::Error;
      m.error = e.what();
    }
  } catch (...) {
    m.status = RunStatus::Error;
    m.error = "unknown failure";
  }

  m.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  print_checks(log, m.checks);
  if (!m.error.empty()) err << "timesym: " << status_name(m.status) << ": " << m.error << '\n';

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  try {
    write_manifest(out_dir / "manifest.json", m);
  } catch (const std::exception& e) {
    err << "timesym: " << e.what() << '\n';
    if (m.status == RunStatus::Ok) m.status = RunStatus::Error;
  }
  log << m.command << ' ' << (m.scenario.empty() ? "?" : m.scenario) << ": " << status_name(m.status)
      << " -> " << (out_dir / "manifest.json").string() << '\n';
  return m;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Time-symmetric open-system dynamics: scenario runner and symmetry audit"};
  app.set_version_flag("--version", std::string("timesym ") + TIMESYM_VERSION);
  app.require_subcommand(1);

  CommandOptions opts;
  std::uint64_t seed = 0;
  std::string out;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", opts.config, "JSON config file")->required();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out, "output directory (overrides the config)");
    sub->add_option("--threads", opts.threads, "worker threads for ensembles")
        ->check(CLI::Range(1, 1024));
  };
  auto* run = app.add_subcommand("run", "run the scenario named in a config");
  auto* audit = app.add_subcommand("audit", "run the symmetry battery for a config");
  add_common(run);
  add_common(audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opts.command = audit->parsed() ? Command::Audit : Command::Run;
  CLI::App* sub = audit->parsed() ? audit : run;
  if (sub->count("--seed") > 0) opts.seed = seed;
  if (sub->count("--out") > 0) opts.out = out;
  return exit_code(execute(opts, std::cout, std::cerr).status);
}

}  // namespace timesym::app
