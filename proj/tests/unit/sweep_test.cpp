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

#include <map>

#include "liplink/error.hpp"
#include "liplink/eval/sweep.hpp"
#include "test_support.hpp"

namespace liplink::eval {
namespace {

nn::TrainingSet dataset(const nn::ModelSpec& spec) {
  nn::Rng rng(3);
  nn::TrainingSet data;
  for (std::uint32_t c = 0; c < spec.num_classes; ++c) {
    data.train.push_back(testing::random_sample(rng, spec, c));
    data.validation.push_back(testing::random_sample(rng, spec, c));
  }
  return data;
}

nn::TrainConfig short_config() {
  nn::TrainConfig config;
  config.max_epochs = 4;
  config.batch_size = 2;
  return config;
}

TEST(Sweep, ExpandsAxesInSortedKeyOrder) {
  const nlohmann::json grid = {
      {"base", {{"train_config", {{"max_epochs", 3}}}}},
      {"axes", {{"lstm_hidden", {32, 64}}, {"learning_rate", {1e-2, 1e-3}}}},
      {"points", {{{"model_spec", {{"dense_units", 7}}}}}}};
  const auto points = expand_grid(grid, nn::ModelSpec{}, nn::TrainConfig{});
  ASSERT_EQ(points.size(), 5u);
  EXPECT_EQ(points[0].config.learning_rate, 1e-2);
  EXPECT_EQ(points[0].spec.lstm_hidden, 32u);
  EXPECT_EQ(points[1].spec.lstm_hidden, 64u);
  EXPECT_EQ(points[2].config.learning_rate, 1e-3);
  EXPECT_EQ(points[3].config.max_epochs, 3u);
  EXPECT_EQ(points[4].spec.dense_units, 7u);
  EXPECT_THROW(expand_grid({{"axes", {{"bogus", {1}}}}}, nn::ModelSpec{}, nn::TrainConfig{}),
               Error);
}

TEST(Sweep, SinglePointMatchesDirectTraining) {
  const auto spec = testing::tiny_spec();
  const auto data = dataset(spec);
  const std::vector<SweepPoint> grid = {{spec, short_config()}};
  const auto result = run_sweep(grid, data);
  ASSERT_EQ(result.entries.size(), 1u);
  const auto direct = nn::train(spec, data, short_config());
  EXPECT_EQ(*result.entries[0].history, direct.history);
  EXPECT_EQ(result.entries[0].validation_top1,
            direct.history.validation_accuracy[direct.history.best_epoch]);
}

TEST(Sweep, IdenticalPointsAgreeAndOrderDoesNotMatter) {
  const auto spec = testing::tiny_spec();
  const auto data = dataset(spec);
  auto other = spec;
  other.lstm_hidden = 6;
  auto config2 = short_config();
  config2.learning_rate = 1e-2;
  const std::vector<SweepPoint> grid = {{spec, short_config()}, {spec, short_config()}, {other, config2}};
  const auto result = run_sweep(grid, data);
  ASSERT_EQ(result.entries.size(), 3u);
  std::map<std::size_t, double> by_index;
  for (const auto& e : result.entries) by_index[e.grid_index] = e.validation_top1;
  EXPECT_EQ(by_index[0], by_index[1]);
  for (std::size_t i = 1; i < result.entries.size(); ++i) {
    EXPECT_GE(result.entries[i - 1].validation_top1, result.entries[i].validation_top1);
  }
  const std::vector<SweepPoint> alone = {{other, config2}};
  const auto single = run_sweep(alone, data);
  for (const auto& e : result.entries) {
    if (e.grid_index == 2) {
      EXPECT_EQ(e.history, single.entries[0].history);
    }
  }
}

TEST(Sweep, FailuresAreRecordedLast) {
  const auto spec = testing::tiny_spec();
  const auto data = dataset(spec);
  auto broken = spec;
  broken.input_side = 16;  // data is 8x8
  const std::vector<SweepPoint> grid = {{broken, short_config()}, {spec, short_config()}};
  const auto result = run_sweep(grid, data);
  ASSERT_EQ(result.entries.size(), 2u);
  EXPECT_FALSE(result.entries[0].error.has_value());
  EXPECT_TRUE(result.entries[1].error.has_value());
  EXPECT_EQ(result.entries[1].grid_index, 0u);
  const auto j = to_json(result);
  EXPECT_EQ(j.at("entries").size(), 2u);
}

}  // namespace
}  // namespace liplink::eval
