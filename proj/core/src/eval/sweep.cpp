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

#include "liplink/eval/sweep.hpp"

#include <algorithm>
#include <set>

#include "liplink/error.hpp"

namespace liplink::eval {

using nlohmann::json;

SweepResult run_sweep(std::span<const SweepPoint> grid, const nn::TrainingSet& data) {
  if (grid.empty()) throw Error(ErrorCode::kBadParams, "sweep grid is empty");
  SweepResult result;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SweepEntry entry{i, grid[i].spec, grid[i].config, 0.0, std::nullopt, std::nullopt};
    try {
      auto trained = nn::train(grid[i].spec, data, grid[i].config);
      entry.validation_top1 = trained.history.validation_accuracy.at(trained.history.best_epoch);
      entry.history = std::move(trained.history);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    result.entries.push_back(std::move(entry));
  }
  std::stable_sort(result.entries.begin(), result.entries.end(),
                   [](const SweepEntry& a, const SweepEntry& b) {
                     if (a.error.has_value() != b.error.has_value()) return !a.error.has_value();
                     if (a.validation_top1 != b.validation_top1) {
                       return a.validation_top1 > b.validation_top1;
                     }
                     return a.grid_index < b.grid_index;
                   });
  return result;
}

namespace {

const std::set<std::string>& spec_keys() {
  static const std::set<std::string> keys = {"input_side",  "sequence_length", "conv_blocks",
                                             "lstm_hidden", "dropout_rate",    "dense_units",
                                             "num_classes"};
  return keys;
}

}  // namespace

std::vector<SweepPoint> expand_grid(const json& grid, const nn::ModelSpec& base_spec,
                                    const nn::TrainConfig& base_config) {
  if (!grid.is_object()) throw Error(ErrorCode::kSchemaError, "grid file must be an object");
  nn::ModelSpec spec = base_spec;
  nn::TrainConfig config = base_config;
  if (grid.contains("base")) {
    const json& base = grid["base"];
    if (base.contains("model_spec")) spec = nn::model_spec_from_json(base["model_spec"], spec);
    if (base.contains("train_config")) {
      config = nn::train_config_from_json(base["train_config"], config);
    }
  }

  std::vector<SweepPoint> points;
  if (grid.contains("axes")) {
    const json& axes = grid["axes"];
    if (!axes.is_object()) throw Error(ErrorCode::kSchemaError, "\"axes\" must be an object");
    std::vector<std::pair<std::string, json>> dims;
    for (const auto& item : axes.items()) dims.emplace_back(item.key(), item.value());
    std::size_t total = 1;
    for (const auto& [key, values] : dims) {
      if (!values.is_array() || values.empty()) {
        throw Error(ErrorCode::kSchemaError, "axis \"" + key + "\" needs a nonempty list");
      }
      total *= values.size();
    }
    for (std::size_t flat = 0; flat < total; ++flat) {
      json spec_patch = json::object();
      json config_patch = json::object();
      std::size_t rem = flat;
      for (std::size_t d = dims.size(); d-- > 0;) {
        const auto& [key, values] = dims[d];
        const json& value = values[rem % values.size()];
        rem /= values.size();
        (spec_keys().count(key) ? spec_patch : config_patch)[key] = value;
      }
      points.push_back({nn::model_spec_from_json(spec_patch, spec),
                        nn::train_config_from_json(config_patch, config)});
    }
  }
  if (grid.contains("points")) {
    for (const auto& p : grid["points"]) {
      points.push_back({nn::model_spec_from_json(p.value("model_spec", json::object()), spec),
                        nn::train_config_from_json(p.value("train_config", json::object()), config)});
    }
  }
  if (points.empty()) throw Error(ErrorCode::kBadParams, "grid expands to no points");
  return points;
}

json to_json(const SweepResult& result) {
  json entries = json::array();
  for (const auto& e : result.entries) {
    json entry = {{"grid_index", e.grid_index},
                  {"model_spec", nn::to_json(e.spec)},
                  {"train_config", nn::to_json(e.config)},
                  {"validation_top1", e.validation_top1}};
    if (e.history) entry["history"] = nn::to_json(*e.history);
    if (e.error) entry["error"] = *e.error;
    entries.push_back(std::move(entry));
  }
  return {{"entries", std::move(entries)}};
}

}  // namespace liplink::eval
