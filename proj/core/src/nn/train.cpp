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

#include "liplink/nn/train.hpp"

#include <limits>
#include <numeric>

#include "liplink/nn/adam.hpp"

namespace liplink::nn {

nlohmann::json to_json(const TrainHistory& h) {
  return {{"train_loss", h.train_loss},
          {"validation_loss", h.validation_loss},
          {"validation_accuracy", h.validation_accuracy},
          {"stopped_epoch", h.stopped_epoch},
          {"best_epoch", h.best_epoch}};
}

SetEvaluation evaluate_set(const ModelWeights<float>& weights,
                           std::span<const LabeledSequence> samples) {
  if (samples.empty()) return {};
  double loss = 0.0;
  std::size_t correct = 0;
  for (const auto& s : samples) {
    const auto logits = forward(weights, s.input, Mode::kInfer);
    const auto ce = softmax_cross_entropy<float>(logits, s.label);
    loss += ce.loss;
    std::size_t best = 0;
    for (std::size_t i = 1; i < logits.size(); ++i) {
      if (logits[i] > logits[best]) best = i;
    }
    if (best == s.label) ++correct;
  }
  return {loss / static_cast<double>(samples.size()),
          static_cast<double>(correct) / static_cast<double>(samples.size())};
}

namespace {

void check_samples(const ModelSpec& spec, std::span<const LabeledSequence> samples,
                   const char* which) {
  for (const auto& s : samples) {
    if (s.label >= spec.num_classes) {
      throw Error(ErrorCode::kLabelOutOfRange, std::string(which) + " label " +
                                                   std::to_string(s.label) + " >= " +
                                                   std::to_string(spec.num_classes));
    }
    if (s.input.length != spec.sequence_length || s.input.side != spec.input_side) {
      throw Error(ErrorCode::kShapeMismatch,
                  std::string(which) + " sample shape does not match the model spec");
    }
  }
}

}  // namespace

TrainResult train(const ModelSpec& spec, const TrainingSet& data, const TrainConfig& config,
                  const TrainHooks& hooks) {
  spec.validate();
  config.validate();
  if (data.train.empty() || data.validation.empty()) {
    throw Error(ErrorCode::kEmptySplit, "training and validation sets must both be nonempty");
  }
  check_samples(spec, data.train, "training");
  check_samples(spec, data.validation, "validation");

  auto weights = initialize_weights<float>(spec, mix_seed(config.seed, 1));
  auto grads = ModelWeights<float>::zeros(spec);
  auto adam = AdamState<float>::zeros(spec);
  Rng order_rng(mix_seed(config.seed, 2));
  Rng dropout_rng(mix_seed(config.seed, 3));

  std::vector<std::size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainResult result{weights, {}};
  TrainHistory& history = result.history;
  double best_loss = std::numeric_limits<double>::infinity();
  std::uint32_t since_best = 0;
  std::uint64_t step = 0;

  for (std::uint32_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    order_rng.shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      const float scale = 1.0f / static_cast<float>(end - start);
      for (auto& [name, tensor] : grads.named()) tensor->fill(0.0f);
      for (std::size_t i = start; i < end; ++i) {
        const auto& sample = data.train[order[i]];
        epoch_loss += accumulate_gradient(weights, sample.input, sample.label, grads, scale,
                                          Mode::kTrain, &dropout_rng)
                          .loss;
      }
      adam_step(weights, grads, adam, config, ++step);
    }

    auto eval = evaluate_set(weights, data.validation);
    if (hooks.validation_loss_override) eval.loss = hooks.validation_loss_override(epoch, eval.loss);
    history.train_loss.push_back(epoch_loss / static_cast<double>(order.size()));
    history.validation_loss.push_back(eval.loss);
    history.validation_accuracy.push_back(eval.accuracy);
    history.stopped_epoch = epoch;
    if (hooks.on_epoch_end) hooks.on_epoch_end(epoch, weights);

    if (epoch == 0 || eval.loss < best_loss) {
      best_loss = eval.loss;
      history.best_epoch = epoch;
      result.weights = weights;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      break;
    }
  }
  return result;
}

}  // namespace liplink::nn
