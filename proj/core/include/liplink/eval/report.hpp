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

#include <filesystem>
#include <string>

#include "liplink/eval/metrics.hpp"

namespace liplink::eval {

// First line is "top1=<v> top5=<v>" with four decimals, followed by one
// "top<k>=<v>" line per reported rank and a sample count line.
std::string format_summary(const EvalReport& report);

// Class-id header row and column; cells are counts.
std::string confusion_csv(const CountMatrix& matrix);

// Writes summary.txt, confusion_top1.csv and confusion_top<k>.csv under
// out_dir (created if missing). Throws IoError.
void render_report(const EvalReport& report, const std::filesystem::path& out_dir);

}  // namespace liplink::eval
