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

#include <cstdio>
#include <iostream>

#include "commands.hpp"
#include "liplink/error.hpp"

int main(int argc, char** argv) {
  using namespace liplink::cli;
  CLI::App app{"liplink: lip-reading phrase recognition toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "liplink 0.1.0");

  Action action;
  add_local_commands(app, action);
  add_remote_commands(app, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const liplink::Error& e) {
    std::cerr << "error: " << liplink::to_string(e.code()) << ": " << e.what() << "\n";
    const bool usage = e.code() == liplink::ErrorCode::kBadParams ||
                       e.code() == liplink::ErrorCode::kBadK;
    return usage ? kUsage : kRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}
