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

#ifndef TIMESYM_APP_APP_HPP
#define TIMESYM_APP_APP_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "timesym_app/manifest.hpp"

namespace timesym::app {

enum class Command { Run, Audit };

struct CommandOptions {
  Command command = Command::Run;
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  int threads = 1;
};

/// Executes one command and writes `manifest.json` into the output
/// directory whatever the outcome. Progress goes to `log`, errors to `err`.
RunManifest execute(const CommandOptions& opts, std::ostream& log, std::ostream& err);

/// Command-line entry point; returns the process exit code.
int main_entry(int argc, char** argv);

}  // namespace timesym::app

#endif  // TIMESYM_APP_APP_HPP
