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

#include "liplink/eval/metrics.hpp"

#include <algorithm>
#include <string>

#include "liplink/error.hpp"

namespace liplink::eval {

namespace {

void check_inputs(std::span<const RankedCandidates> ranked, std::span<const std::uint32_t> labels,
                  std::uint32_t k) {
  if (ranked.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(ranked.size()) + " predictions for " +
                                                std::to_string(labels.size()) + " labels");
  }
  if (k < 1) throw Error(ErrorCode::kBadK, "k must be >= 1");
  for (const auto& r : ranked) {
    if (r.size() < k) {
      throw Error(ErrorCode::kLengthMismatch, "k=" + std::to_string(k) + " exceeds a list of " +
                                                  std::to_string(r.size()) + " candidates");
    }
  }
}

bool in_first_k(const RankedCandidates& r, std::uint32_t label, std::uint32_t k) {
  return std::any_of(r.begin(), r.begin() + k,
                     [label](const nn::Candidate& c) { return c.class_id == label; });
}

}  // namespace

double topk_accuracy(std::span<const RankedCandidates> ranked,
                     std::span<const std::uint32_t> labels, std::uint32_t k) {
  check_inputs(ranked, labels, k);
  if (ranked.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) hits += in_first_k(ranked[i], labels[i], k);
  return static_cast<double>(hits) / static_cast<double>(ranked.size());
}

CountMatrix confusion(std::span<const RankedCandidates> ranked,
                      std::span<const std::uint32_t> labels, std::uint32_t k,
                      std::uint32_t num_classes) {
  check_inputs(ranked, labels, k);
  CountMatrix m(num_classes, std::vector<std::uint64_t>(num_classes, 0));
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (labels[i] >= num_classes) {
      throw Error(ErrorCode::kLabelOutOfRange, "label " + std::to_string(labels[i]));
    }
    for (std::uint32_t r = 0; r < k; ++r) {
      const std::uint32_t predicted = ranked[i][r].class_id;
      if (predicted >= num_classes) {
        throw Error(ErrorCode::kLabelOutOfRange, "predicted class " + std::to_string(predicted));
      }
      ++m[labels[i]][predicted];
    }
  }
  return m;
}

EvalReport evaluate(std::span<const RankedCandidates> ranked,
                    std::span<const std::uint32_t> labels, std::uint32_t num_classes,
                    std::uint32_t confusion_k) {
  EvalReport report;
  report.num_classes = num_classes;
  report.confusion_k = confusion_k;
  report.samples = ranked.size();
  for (std::uint32_t k = 1; k <= kReportedRanks; ++k) {
    report.accuracy_at_k.push_back(topk_accuracy(ranked, labels, std::min(k, num_classes)));
  }
  report.confusion_top1 = confusion(ranked, labels, 1, num_classes);
  report.confusion_topk = confusion(ranked, labels, confusion_k, num_classes);
  report.class_counts.assign(num_classes, 0);
  for (const auto label : labels) ++report.class_counts[label];
  return report;
}

EvalReport evaluate_model(const nn::ModelWeights<float>& weights,
                          std::span<const nn::LabeledSequence> samples,
                          std::uint32_t confusion_k) {
  const std::uint32_t k_all = weights.spec.num_classes;
  if (confusion_k < 1 || confusion_k > k_all) {
    throw Error(ErrorCode::kBadK, "confusion k=" + std::to_string(confusion_k) +
                                      " outside [1, " + std::to_string(k_all) + "]");
  }
  std::vector<RankedCandidates> ranked;
  std::vector<std::uint32_t> labels;
  for (const auto& s : samples) {
    ranked.push_back(nn::predict_topk(weights, s.input, k_all));
    labels.push_back(s.label);
  }
  return evaluate(ranked, labels, k_all, confusion_k);
}

}  // namespace liplink::eval
