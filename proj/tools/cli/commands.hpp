// Copyright 2026 The PulseForge Authors
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

#pragma once

#include <ostream>
#include <span>
#include <string>

namespace pulseforge::cli {

/// Exit codes of every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kNotConverged = 1,
  kInputError = 2,
};

/// Runs one `pulseforge` invocation. `args` excludes the program name.
/// Machine-readable output goes to `out` as JSON; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace pulseforge::cli
