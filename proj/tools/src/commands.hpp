// Copyright 2026 The LipLink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

namespace liplink::cli {

enum ExitCode : int { kOk = 0, kRuntime = 1, kUsage = 2 };

// Invalid arguments detected after parsing; exits with kUsage.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Registered subcommand actions run after a successful parse and return the
// process exit code.
using Action = std::function<int()>;

void add_local_commands(CLI::App& app, Action& action);
void add_remote_commands(CLI::App& app, Action& action);

}  // namespace liplink::cli
