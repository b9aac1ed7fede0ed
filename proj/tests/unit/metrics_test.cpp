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

#include "liplink/error.hpp"
#include "liplink/eval/metrics.hpp"
#include "liplink/nn/rng.hpp"

namespace liplink::eval {
namespace {

RankedCandidates ranking(std::initializer_list<std::uint32_t> ids) {
  RankedCandidates out;
  double p = 0.5;
  for (auto id : ids) {
    out.push_back({id, p});
    p /= 2;
  }
  return out;
}

TEST(Metrics, AllCorrectAtEveryK) {
  const std::vector<RankedCandidates> ranked = {ranking({0, 1, 2}), ranking({1, 0, 2}),
                                                ranking({2, 1, 0})};
  const std::vector<std::uint32_t> labels = {0, 1, 2};
  for (std::uint32_t k = 1; k <= 3; ++k) EXPECT_EQ(topk_accuracy(ranked, labels, k), 1.0);
}

TEST(Metrics, TwoOfThreeAtTopOne) {
  const std::vector<RankedCandidates> ranked = {ranking({0, 1, 2}), ranking({2, 1, 0}),
                                                ranking({2, 0, 1})};
  const std::vector<std::uint32_t> labels = {0, 1, 2};
  EXPECT_DOUBLE_EQ(topk_accuracy(ranked, labels, 1), 2.0 / 3.0);
}

TEST(Metrics, LabelAlwaysSecond) {
  const std::vector<RankedCandidates> ranked = {ranking({1, 0, 2}), ranking({2, 1, 0})};
  const std::vector<std::uint32_t> labels = {0, 1};
  EXPECT_EQ(topk_accuracy(ranked, labels, 1), 0.0);
  EXPECT_EQ(topk_accuracy(ranked, labels, 2), 1.0);
}

TEST(Metrics, LengthMismatch) {
  const std::vector<RankedCandidates> ranked = {ranking({0, 1})};
  const std::vector<std::uint32_t> labels = {0, 1};
  try {
    topk_accuracy(ranked, labels, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  const std::vector<std::uint32_t> one = {0};
  EXPECT_THROW(topk_accuracy(ranked, one, 3), Error);
}

TEST(Confusion, PerfectPredictionsAreDiagonal) {
  const std::vector<RankedCandidates> ranked = {ranking({0, 1, 2}), ranking({0, 2, 1}),
                                                ranking({2, 1, 0})};
  const std::vector<std::uint32_t> labels = {0, 0, 2};
  EXPECT_EQ(confusion(ranked, labels, 1, 3),
            (CountMatrix{{2, 0, 0}, {0, 0, 0}, {0, 0, 1}}));
}

TEST(Confusion, TopTwoMembership) {
  const std::vector<RankedCandidates> ranked = {ranking({1, 0, 2})};
  const std::vector<std::uint32_t> labels = {0};
  EXPECT_EQ(confusion(ranked, labels, 2, 3), (CountMatrix{{1, 1, 0}, {0, 0, 0}, {0, 0, 0}}));
}

TEST(ConfusionProperty, RowSumsAndDiagonal) {
  nn::Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const auto classes = static_cast<std::uint32_t>(2 + rng.below(7));
    const auto n = 1 + rng.below(20);
    std::vector<RankedCandidates> ranked;
    std::vector<std::uint32_t> labels;
    for (std::uint64_t s = 0; s < n; ++s) {
      std::vector<std::uint32_t> ids(classes);
      for (std::uint32_t i = 0; i < classes; ++i) ids[i] = i;
      rng.shuffle(std::span<std::uint32_t>(ids));
      RankedCandidates r;
      for (auto id : ids) r.push_back({id, 0.0});
      ranked.push_back(r);
      labels.push_back(static_cast<std::uint32_t>(rng.below(classes)));
    }
    double previous = 0;
    for (std::uint32_t k = 1; k <= classes; ++k) {
      const auto m = confusion(ranked, labels, k, classes);
      std::vector<std::uint64_t> counts(classes, 0);
      for (auto l : labels) ++counts[l];
      std::uint64_t diagonal = 0;
      for (std::uint32_t i = 0; i < classes; ++i) {
        std::uint64_t row = 0;
        for (auto v : m[i]) row += v;
        EXPECT_EQ(row, k * counts[i]);
        diagonal += m[i][i];
      }
      const double acc = topk_accuracy(ranked, labels, k);
      EXPECT_DOUBLE_EQ(acc, static_cast<double>(diagonal) / static_cast<double>(n));
      EXPECT_GE(acc, previous);
      previous = acc;
    }
  }
}

TEST(Evaluate, ReportCapsRanksAtClassCount) {
  const std::vector<RankedCandidates> ranked = {ranking({1, 0, 2}), ranking({2, 1, 0})};
  const std::vector<std::uint32_t> labels = {0, 1};
  const auto report = evaluate(ranked, labels, 3, 3);
  ASSERT_EQ(report.accuracy_at_k.size(), 5u);
  EXPECT_EQ(report.accuracy_at_k[0], 0.0);
  EXPECT_EQ(report.accuracy_at_k[1], 1.0);
  EXPECT_EQ(report.accuracy_at_k[4], 1.0);
  EXPECT_EQ(report.class_counts, (std::vector<std::uint64_t>{1, 1, 0}));
  EXPECT_EQ(report.samples, 2u);
}

}  // namespace
}  // namespace liplink::eval
