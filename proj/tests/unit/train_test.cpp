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
#include "liplink/nn/train.hpp"
#include "test_support.hpp"

namespace liplink::nn {
namespace {

TrainingSet small_dataset(const ModelSpec& spec, std::uint64_t seed, std::size_t per_class = 2) {
  Rng rng(seed);
  TrainingSet data;
  for (std::uint32_t c = 0; c < spec.num_classes; ++c) {
    for (std::size_t r = 0; r < per_class; ++r) {
      data.train.push_back(testing::random_sample(rng, spec, c));
    }
    data.validation.push_back(testing::random_sample(rng, spec, c));
  }
  return data;
}

TrainConfig quick_config() {
  TrainConfig config;
  config.batch_size = 2;
  config.max_epochs = 40;
  config.patience = 10;
  config.seed = 3;
  return config;
}

TEST(Train, InjectedLossesStopTwelveEpochsIn) {
  const ModelSpec spec = testing::tiny_spec();
  const auto data = small_dataset(spec, 1);
  std::map<std::uint32_t, ModelWeights<float>> checkpoints;
  TrainHooks hooks;
  hooks.validation_loss_override = [](std::uint32_t epoch, double) {
    return epoch == 0 ? 1.0 : epoch == 1 ? 0.9 : 0.95;
  };
  hooks.on_epoch_end = [&](std::uint32_t epoch, const ModelWeights<float>& w) {
    checkpoints.emplace(epoch, w);
  };
  const auto result = train(spec, data, quick_config(), hooks);
  EXPECT_EQ(result.history.best_epoch, 1u);
  EXPECT_EQ(result.history.stopped_epoch, 11u);
  EXPECT_EQ(result.history.train_loss.size(), 12u);
  EXPECT_EQ(result.history.validation_loss.size(), 12u);
  EXPECT_EQ(result.history.validation_accuracy.size(), 12u);
  EXPECT_EQ(checkpoints.size(), 12u);
  EXPECT_EQ(result.weights, checkpoints.at(1));
  EXPECT_NE(result.weights, checkpoints.at(11));
}

TEST(Train, PatienceOneWithRisingLoss) {
  const ModelSpec spec = testing::tiny_spec();
  const auto data = small_dataset(spec, 2);
  TrainConfig config = quick_config();
  config.patience = 1;
  std::map<std::uint32_t, ModelWeights<float>> checkpoints;
  TrainHooks hooks;
  hooks.validation_loss_override = [](std::uint32_t epoch, double) { return 1.0 + epoch; };
  hooks.on_epoch_end = [&](std::uint32_t epoch, const ModelWeights<float>& w) {
    checkpoints.emplace(epoch, w);
  };
  const auto result = train(spec, data, config, hooks);
  EXPECT_EQ(result.history.stopped_epoch, 1u);
  EXPECT_EQ(result.history.best_epoch, 0u);
  EXPECT_EQ(result.weights, checkpoints.at(0));
}

TEST(TrainProperty, StopGapEqualsPatience) {
  const ModelSpec spec = testing::tiny_spec();
  const auto data = small_dataset(spec, 4, 1);
  Rng rng(8);
  for (int trial = 0; trial < 12; ++trial) {
    TrainConfig config = quick_config();
    config.max_epochs = 60;
    config.patience = static_cast<std::uint32_t>(1 + rng.below(6));
    std::vector<double> losses(60);
    for (auto& l : losses) l = std::round(rng.uniform(0, 5));  // ties never improve
    TrainHooks hooks;
    hooks.validation_loss_override = [&](std::uint32_t e, double) { return losses[e]; };
    const auto h = train(spec, data, config, hooks).history;
    EXPECT_LE(h.best_epoch, h.stopped_epoch);
    EXPECT_EQ(h.train_loss.size(), h.stopped_epoch + 1);
    if (h.stopped_epoch + 1 < config.max_epochs) {
      EXPECT_EQ(h.stopped_epoch - h.best_epoch, config.patience);
    }
    // Oracle: replay the rule on the injected sequence.
    std::uint32_t best = 0;
    for (std::uint32_t e = 1; e <= h.stopped_epoch; ++e) {
      if (losses[e] < losses[best]) best = e;
    }
    EXPECT_EQ(h.best_epoch, best);
  }
}

TEST(Train, SameSeedIsBitIdentical) {
  ModelSpec spec = testing::tiny_spec();
  spec.dropout_rate = 0.25;
  const auto data = small_dataset(spec, 5);
  TrainConfig config = quick_config();
  config.max_epochs = 6;
  const auto a = train(spec, data, config);
  const auto b = train(spec, data, config);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.history, b.history);
  config.seed += 1;
  EXPECT_NE(train(spec, data, config).weights, a.weights);
}

TEST(Train, Errors) {
  const ModelSpec spec = testing::tiny_spec();
  auto data = small_dataset(spec, 6);
  TrainingSet empty_validation{data.train, {}};
  try {
    train(spec, empty_validation, quick_config());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptySplit);
  }
  data.train[0].label = spec.num_classes;
  try {
    train(spec, data, quick_config());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLabelOutOfRange);
  }
}

TEST(TrainProperty, OverfitsSingleSample) {
  const ModelSpec spec = testing::tiny_spec();
  Rng rng(7);
  const auto sample = testing::random_sample(rng, spec, 2);
  TrainingSet data{{sample}, {sample}};
  TrainConfig config;
  config.learning_rate = 1e-2;
  config.batch_size = 1;
  config.max_epochs = 500;
  config.patience = 500;
  const auto h = train(spec, data, config).history;
  std::size_t reached = h.train_loss.size();
  for (std::size_t i = 0; i < h.train_loss.size(); ++i) {
    if (h.train_loss[i] < 1e-3) {
      reached = i;
      break;
    }
  }
  ASSERT_LT(reached, h.train_loss.size()) << "final loss " << h.train_loss.back();
  for (std::size_t i = 1; i <= reached; ++i) EXPECT_LT(h.train_loss[i], h.train_loss[i - 1]) << i;
}

TEST(Train, HistoryJson) {
  TrainHistory h;
  h.train_loss = {1.0, 0.5};
  h.validation_loss = {1.1, 0.6};
  h.validation_accuracy = {0.0, 0.5};
  h.stopped_epoch = 1;
  h.best_epoch = 1;
  const auto j = to_json(h);
  EXPECT_EQ(j.at("best_epoch"), 1);
  EXPECT_EQ(j.at("train_loss").size(), 2u);
}

}  // namespace
}  // namespace liplink::nn
