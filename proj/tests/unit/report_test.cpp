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

#include <gtest/gtest.h>

#include "liplink/eval/report.hpp"
#include "liplink/io.hpp"
#include "test_support.hpp"

namespace liplink::eval {
namespace {

EvalReport two_class_report() {
  EvalReport r;
  r.num_classes = 2;
  r.confusion_k = 2;
  r.samples = 3;
  r.accuracy_at_k = {2.0 / 3.0, 1.0, 1.0, 1.0, 1.0};
  r.confusion_top1 = {{2, 0}, {1, 0}};
  r.confusion_topk = {{2, 2}, {1, 1}};
  r.class_counts = {2, 1};
  return r;
}

TEST(Report, SummaryFormat) {
  const auto text = format_summary(two_class_report());
  EXPECT_EQ(text.substr(0, text.find('\n')), "top1=0.6667 top5=1.0000");
  EXPECT_NE(text.find("top2=1.0000\n"), std::string::npos);
  EXPECT_NE(text.find("samples=3 classes=2 confusion_k=2\n"), std::string::npos);
}

TEST(Report, TwoClassCsvHasHeaderRowAndColumn) {
  const auto csv = confusion_csv(two_class_report().confusion_top1);
  EXPECT_EQ(csv, "true\\pred,0,1\n0,2,0\n1,1,0\n");
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, 3u);
}

TEST(Report, RenderIsByteStable) {
  testing::TempDir dir;
  render_report(two_class_report(), dir / "a");
  render_report(two_class_report(), dir / "b");
  for (const char* name : {"summary.txt", "confusion_top1.csv", "confusion_top2.csv"}) {
    EXPECT_EQ(read_file(dir.path() / "a" / name), read_file(dir.path() / "b" / name)) << name;
  }
}

}  // namespace
}  // namespace liplink::eval
