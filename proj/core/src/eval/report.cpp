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

#include "liplink/eval/report.hpp"

#include <cstdio>

#include "liplink/error.hpp"
#include "liplink/io.hpp"

namespace liplink::eval {

namespace {
std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}
}  // namespace

std::string format_summary(const EvalReport& report) {
  std::string out = "top1=" + fixed4(report.accuracy_at_k.at(0)) +
                    " top5=" + fixed4(report.accuracy_at_k.at(kReportedRanks - 1)) + "\n";
  for (std::uint32_t k = 1; k <= kReportedRanks; ++k) {
    out += "top" + std::to_string(k) + "=" + fixed4(report.accuracy_at_k.at(k - 1)) + "\n";
  }
  out += "samples=" + std::to_string(report.samples) +
         " classes=" + std::to_string(report.num_classes) +
         " confusion_k=" + std::to_string(report.confusion_k) + "\n";
  return out;
}

std::string confusion_csv(const CountMatrix& matrix) {
  std::string out = "true\\pred";
  for (std::size_t j = 0; j < matrix.size(); ++j) out += "," + std::to_string(j);
  out += "\n";
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += std::to_string(i);
    for (const auto v : matrix[i]) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

void render_report(const EvalReport& report, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + out_dir.string() + ": " + ec.message());
  write_file_atomic(out_dir / "summary.txt", format_summary(report));
  write_file_atomic(out_dir / "confusion_top1.csv", confusion_csv(report.confusion_top1));
  write_file_atomic(out_dir / ("confusion_top" + std::to_string(report.confusion_k) + ".csv"),
                    confusion_csv(report.confusion_topk));
}

}  // namespace liplink::eval
