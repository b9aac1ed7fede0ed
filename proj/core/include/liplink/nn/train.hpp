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
#include <functional>
#include <span>
#include <vector>

#include "liplink/nn/model.hpp"
#include "liplink/nn/model_spec.hpp"

namespace liplink::nn {

struct LabeledSequence {
  InputTensorSequence input;
  std::uint32_t label = 0;
};

// Materialised train/validation partition.
struct TrainingSet {
  std::vector<LabeledSequence> train;
  std::vector<LabeledSequence> validation;
};

struct TrainHistory {
  std::vector<double> train_loss;
  std::vector<double> validation_loss;
  std::vector<double> validation_accuracy;
  std::uint32_t stopped_epoch = 0;
  std::uint32_t best_epoch = 0;

  friend bool operator==(const TrainHistory&, const TrainHistory&) = default;
};

nlohmann::json to_json(const TrainHistory& history);

struct TrainHooks {
  // Replaces the measured validation loss of an epoch (0-indexed) before the
  // stopping rule sees it.
  std::function<double(std::uint32_t epoch, double measured)> validation_loss_override;
  std::function<void(std::uint32_t epoch, const ModelWeights<float>& weights)> on_epoch_end;
};

struct TrainResult {
  ModelWeights<float> weights;  // restored from best_epoch
  TrainHistory history;
};

struct SetEvaluation {
  double loss = 0.0;
  double accuracy = 0.0;
};

// Mean cross-entropy and top-1 accuracy in inference mode.
SetEvaluation evaluate_set(const ModelWeights<float>& weights,
                           std::span<const LabeledSequence> samples);

// Mini-batch ADAM on mean categorical cross-entropy with early stopping on
// validation loss. Deterministic for a given config.seed.
TrainResult train(const ModelSpec& spec, const TrainingSet& data, const TrainConfig& config,
                  const TrainHooks& hooks = {});

}  // namespace liplink::nn
