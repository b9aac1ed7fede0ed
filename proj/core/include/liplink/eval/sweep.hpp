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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "liplink/nn/model_spec.hpp"
#include "liplink/nn/train.hpp"

namespace liplink::eval {

struct SweepPoint {
  nn::ModelSpec spec;
  nn::TrainConfig config;
};

struct SweepEntry {
  std::size_t grid_index = 0;
  nn::ModelSpec spec;
  nn::TrainConfig config;
  // Validation top-1 of the restored best-epoch weights.
  double validation_top1 = 0.0;
  std::optional<nn::TrainHistory> history;
  std::optional<std::string> error;
};

struct SweepResult {
  // Sorted by accuracy descending, ties by grid index; failed entries last.
  std::vector<SweepEntry> entries;
};

// Trains every grid point independently on the same data. A failing point is
// recorded with its error and does not stop the sweep.
SweepResult run_sweep(std::span<const SweepPoint> grid, const nn::TrainingSet& data);

// Grid file:
//   {"base": {"model_spec": {...}, "train_config": {...}},
//    "axes": {"lstm_hidden": [...], "learning_rate": [...], ...},
//    "points": [{"model_spec": {...}, "train_config": {...}}, ...]}
// Axes expand to their cartesian product (keys in sorted order, last key
// fastest); explicit points are appended after it.
std::vector<SweepPoint> expand_grid(const nlohmann::json& grid, const nn::ModelSpec& base_spec,
                                    const nn::TrainConfig& base_config);

nlohmann::json to_json(const SweepResult& result);

}  // namespace liplink::eval
