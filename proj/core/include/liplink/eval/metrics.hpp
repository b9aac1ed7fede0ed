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

#include <cstdint>
#include <span>
#include <vector>

#include "liplink/nn/model.hpp"
#include "liplink/nn/train.hpp"

namespace liplink::eval {

using nn::RankedCandidates;
using CountMatrix = std::vector<std::vector<std::uint64_t>>;

// Fraction of samples whose label is among the first k candidates.
double topk_accuracy(std::span<const RankedCandidates> ranked,
                     std::span<const std::uint32_t> labels, std::uint32_t k);

// k = 1: cell (i, j) counts class-i samples predicted j at rank 1.
// k > 1: cell (i, j) counts class-i samples with j among the first k
// candidates, so row i sums to k * count(i).
CountMatrix confusion(std::span<const RankedCandidates> ranked,
                      std::span<const std::uint32_t> labels, std::uint32_t k,
                      std::uint32_t num_classes);

inline constexpr std::uint32_t kReportedRanks = 5;

struct EvalReport {
  std::uint32_t num_classes = 0;
  std::uint32_t confusion_k = 5;
  std::uint64_t samples = 0;
  // accuracy_at_k[k - 1] for k = 1..5; k is capped at num_classes.
  std::vector<double> accuracy_at_k;
  CountMatrix confusion_top1;
  CountMatrix confusion_topk;
  std::vector<std::uint64_t> class_counts;
};

EvalReport evaluate(std::span<const RankedCandidates> ranked,
                    std::span<const std::uint32_t> labels, std::uint32_t num_classes,
                    std::uint32_t confusion_k = kReportedRanks);

// Ranks every class for each sample, then evaluates.
EvalReport evaluate_model(const nn::ModelWeights<float>& weights,
                          std::span<const nn::LabeledSequence> samples,
                          std::uint32_t confusion_k = kReportedRanks);

}  // namespace liplink::eval
