// Copyright 2026 The weaksym Authors
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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace weaksym::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitCertification = 3;
inline constexpr int kExitNumerical = 4;

struct RunOptions {
  std::optional<std::string> out_dir;  // overrides output.directory
  int workers = 1;
  double tol = 1e-8;  // certification tolerance
};

int exit_code(ErrorCategory category);

// Module that owns a failure kind, used to qualify messages.
std::string_view module_of(ErrorKind kind);

// Executes a parsed configuration and writes its artifacts; returns the process exit code.
int run(const RunConfig& config, const RunOptions& options, std::ostream& log);

// Full command-line entry point: argument parsing, config loading, execution.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weaksym::cli
