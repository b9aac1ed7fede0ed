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

#include "liplink/nn/model.hpp"

#include <algorithm>
#include <cmath>

namespace liplink::nn {

std::vector<std::pair<std::string, Shape>> parameter_shapes(const ModelSpec& spec) {
  spec.validate();
  std::vector<std::pair<std::string, Shape>> shapes;
  std::size_t channels = 1;
  for (std::size_t i = 0; i < spec.conv_blocks.size(); ++i) {
    const std::size_t out = spec.conv_blocks[i].out_channels;
    const std::string prefix = "conv" + std::to_string(i);
    shapes.emplace_back(prefix + ".kernel", Shape{out, channels, 3, 3});
    shapes.emplace_back(prefix + ".bias", Shape{out});
    channels = out;
  }
  const std::size_t features = spec.feature_size();
  const std::size_t hidden = spec.lstm_hidden;
  shapes.emplace_back("lstm.input_kernel", Shape{features, 4 * hidden});
  shapes.emplace_back("lstm.recurrent_kernel", Shape{hidden, 4 * hidden});
  shapes.emplace_back("lstm.bias", Shape{4 * hidden});
  shapes.emplace_back("dense.kernel", Shape{hidden, spec.dense_units});
  shapes.emplace_back("dense.bias", Shape{spec.dense_units});
  shapes.emplace_back("output.kernel", Shape{spec.dense_units, spec.num_classes});
  shapes.emplace_back("output.bias", Shape{spec.num_classes});
  return shapes;
}

template <typename Real>
ModelWeights<Real> ModelWeights<Real>::zeros(const ModelSpec& spec) {
  ModelWeights w;
  w.spec = spec;
  w.conv_kernels.resize(spec.conv_blocks.size());
  w.conv_biases.resize(spec.conv_blocks.size());
  const auto shapes = parameter_shapes(spec);
  auto slots = w.named();
  for (std::size_t i = 0; i < shapes.size(); ++i) *slots[i].second = Tensor<Real>(shapes[i].second);
  return w;
}

template <typename Real>
std::vector<std::pair<std::string, Tensor<Real>*>> ModelWeights<Real>::named() {
  std::vector<std::pair<std::string, Tensor<Real>*>> out;
  for (std::size_t i = 0; i < conv_kernels.size(); ++i) {
    out.emplace_back("conv" + std::to_string(i) + ".kernel", &conv_kernels[i]);
    out.emplace_back("conv" + std::to_string(i) + ".bias", &conv_biases[i]);
  }
  out.emplace_back("lstm.input_kernel", &lstm_input_kernel);
  out.emplace_back("lstm.recurrent_kernel", &lstm_recurrent_kernel);
  out.emplace_back("lstm.bias", &lstm_bias);
  out.emplace_back("dense.kernel", &dense_kernel);
  out.emplace_back("dense.bias", &dense_bias);
  out.emplace_back("output.kernel", &output_kernel);
  out.emplace_back("output.bias", &output_bias);
  return out;
}

template <typename Real>
std::vector<std::pair<std::string, const Tensor<Real>*>> ModelWeights<Real>::named() const {
  std::vector<std::pair<std::string, const Tensor<Real>*>> out;
  for (auto& [name, tensor] : const_cast<ModelWeights*>(this)->named()) {
    out.emplace_back(name, tensor);
  }
  return out;
}

template <typename Real>
std::size_t ModelWeights<Real>::parameter_count() const {
  std::size_t n = 0;
  for (const auto& [name, tensor] : named()) n += tensor->size();
  return n;
}

template <typename Real>
ModelWeights<Real> initialize_weights(const ModelSpec& spec, std::uint64_t seed) {
  auto weights = ModelWeights<Real>::zeros(spec);
  Rng rng(mix_seed(seed, 0x696e6974));  // "init"
  for (auto& [name, tensor] : weights.named()) {
    if (tensor->rank() == 1) continue;  // biases
    const std::size_t fan_in = tensor->rank() == 4 ? tensor->dim(1) * 9 : tensor->dim(0);
    const double s = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (auto& v : tensor->values()) v = static_cast<Real>(rng.uniform(-s, s));
  }
  const std::size_t hidden = spec.lstm_hidden;
  for (std::size_t k = 0; k < hidden; ++k) weights.lstm_bias[hidden + k] = Real{1};
  return weights;
}

namespace {

template <typename Real>
struct BlockCache {
  Tensor<Real> input;
  Tensor<Real> conv_out;  // pre-activation
  std::vector<std::uint32_t> argmax;
};

template <typename Real>
struct ForwardCache {
  std::vector<std::vector<BlockCache<Real>>> frames;  // [T][block]
  Tensor<Real> features;                              // [T, F]
  LstmCache<Real> lstm;
  DropoutResult<Real> dropped;
  Tensor<Real> dense_pre;
  Tensor<Real> dense_act;
  Tensor<Real> logits;
};

template <typename Real>
void check_input(const ModelSpec& spec, const InputTensorSequence& input) {
  if (input.length != spec.sequence_length || input.side != spec.input_side ||
      input.values.size() != input.frame_size() * input.length) {
    throw Error(ErrorCode::kShapeMismatch,
                "input sequence " + std::to_string(input.length) + "x" +
                    std::to_string(input.side) + " does not match model " +
                    std::to_string(spec.sequence_length) + "x" + std::to_string(spec.input_side));
  }
}

template <typename Real>
ForwardCache<Real> run_forward(const ModelWeights<Real>& w, const InputTensorSequence& input,
                               Mode mode, Rng* rng, bool keep_frames) {
  const ModelSpec& spec = w.spec;
  check_input<Real>(spec, input);
  const std::size_t steps = spec.sequence_length;
  const std::size_t side = spec.input_side;
  const std::size_t features = spec.feature_size();

  ForwardCache<Real> cache;
  cache.features = Tensor<Real>({steps, features});
  if (keep_frames) cache.frames.resize(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    Tensor<Real> x({1, side, side});
    const auto frame = input.frame(t);
    for (std::size_t i = 0; i < frame.size(); ++i) x[i] = static_cast<Real>(frame[i]);
    for (std::size_t b = 0; b < spec.conv_blocks.size(); ++b) {
      Tensor<Real> conv_out = conv2d_forward(x, w.conv_kernels[b], w.conv_biases[b]);
      PoolResult<Real> pooled = maxpool2_forward(relu(conv_out));
      if (keep_frames) {
        cache.frames[t].push_back(
            {std::move(x), std::move(conv_out), std::move(pooled.argmax)});
      }
      x = std::move(pooled.output);
    }
    std::copy(x.data(), x.data() + features, cache.features.data() + t * features);
  }

  cache.lstm = lstm_forward(cache.features, w.lstm_input_kernel, w.lstm_recurrent_kernel,
                            w.lstm_bias);
  const std::size_t hidden = spec.lstm_hidden;
  Tensor<Real> last({hidden});
  std::copy(cache.lstm.hidden.data() + (steps - 1) * hidden,
            cache.lstm.hidden.data() + steps * hidden, last.data());

  if (mode == Mode::kTrain && spec.dropout_rate > 0.0 && rng == nullptr) {
    throw Error(ErrorCode::kBadParams, "training-mode dropout needs a random generator");
  }
  Rng unused(0);
  cache.dropped = dropout(last, spec.dropout_rate, mode, rng ? *rng : unused);
  cache.dense_pre = dense_forward(cache.dropped.output, w.dense_kernel, w.dense_bias);
  cache.dense_act = relu(cache.dense_pre);
  cache.logits = dense_forward(cache.dense_act, w.output_kernel, w.output_bias);
  return cache;
}

}  // namespace

template <typename Real>
std::vector<Real> forward(const ModelWeights<Real>& weights, const InputTensorSequence& input,
                          Mode mode, Rng* rng) {
  auto cache = run_forward(weights, input, mode, rng, /*keep_frames=*/false);
  return {cache.logits.values().begin(), cache.logits.values().end()};
}

template <typename Real>
SampleLoss accumulate_gradient(const ModelWeights<Real>& w, const InputTensorSequence& input,
                               std::uint32_t label, ModelWeights<Real>& grads, Real grad_scale,
                               Mode mode, Rng* rng) {
  const ModelSpec& spec = w.spec;
  if (label >= spec.num_classes) {
    throw Error(ErrorCode::kLabelOutOfRange, "label " + std::to_string(label) + " >= " +
                                                 std::to_string(spec.num_classes));
  }
  auto cache = run_forward(w, input, mode, rng, /*keep_frames=*/true);
  const auto ce = softmax_cross_entropy<Real>(cache.logits.values(), label);

  SampleLoss result;
  result.loss = static_cast<double>(ce.loss);
  result.predicted = static_cast<std::uint32_t>(
      std::max_element(ce.probabilities.begin(), ce.probabilities.end()) -
      ce.probabilities.begin());

  Tensor<Real> g_logits({spec.num_classes});
  for (std::size_t i = 0; i < ce.grad.size(); ++i) g_logits[i] = ce.grad[i] * grad_scale;

  Tensor<Real> g_act({spec.dense_units});
  dense_backward_accumulate(cache.dense_act, w.output_kernel, g_logits, &g_act,
                            grads.output_kernel, grads.output_bias);
  const Tensor<Real> g_pre = relu_backward(cache.dense_pre, g_act);
  Tensor<Real> g_dropped({spec.lstm_hidden});
  dense_backward_accumulate(cache.dropped.output, w.dense_kernel, g_pre, &g_dropped,
                            grads.dense_kernel, grads.dense_bias);
  const Tensor<Real> g_last = apply_dropout_mask(g_dropped, cache.dropped.keep, spec.dropout_rate);

  const std::size_t steps = spec.sequence_length;
  const std::size_t hidden = spec.lstm_hidden;
  Tensor<Real> g_hidden({steps, hidden});
  std::copy(g_last.data(), g_last.data() + hidden, g_hidden.data() + (steps - 1) * hidden);

  const bool has_conv = !spec.conv_blocks.empty();
  Tensor<Real> g_features(cache.features.shape());
  lstm_backward_accumulate(cache.features, w.lstm_input_kernel, w.lstm_recurrent_kernel,
                           cache.lstm, g_hidden, has_conv ? &g_features : nullptr,
                           grads.lstm_input_kernel, grads.lstm_recurrent_kernel, grads.lstm_bias);
  if (!has_conv) return result;

  const std::size_t features = spec.feature_size();
  const std::size_t fside = spec.feature_side();
  for (std::size_t t = 0; t < steps; ++t) {
    auto& blocks = cache.frames[t];
    Tensor<Real> g({spec.conv_blocks.back().out_channels, fside, fside});
    std::copy(g_features.data() + t * features, g_features.data() + (t + 1) * features,
              g.data());
    for (std::size_t b = blocks.size(); b-- > 0;) {
      const BlockCache<Real>& blk = blocks[b];
      const Tensor<Real> g_relu = maxpool2_backward(g, blk.argmax, blk.conv_out.shape());
      const Tensor<Real> g_conv = relu_backward(blk.conv_out, g_relu);
      if (b > 0) {
        Tensor<Real> g_in(blk.input.shape());
        conv2d_backward_accumulate(blk.input, w.conv_kernels[b], g_conv, &g_in,
                                   grads.conv_kernels[b], grads.conv_biases[b]);
        g = std::move(g_in);
      } else {
        conv2d_backward_accumulate(blk.input, w.conv_kernels[b], g_conv,
                                   static_cast<Tensor<Real>*>(nullptr), grads.conv_kernels[b],
                                   grads.conv_biases[b]);
      }
    }
  }
  return result;
}

RankedCandidates rank_probabilities(std::span<const double> probabilities, std::uint32_t k) {
  if (k < 1 || k > probabilities.size()) {
    throw Error(ErrorCode::kBadK, "k=" + std::to_string(k) + " outside [1, " +
                                      std::to_string(probabilities.size()) + "]");
  }
  RankedCandidates ranked(probabilities.size());
  for (std::uint32_t i = 0; i < probabilities.size(); ++i) ranked[i] = {i, probabilities[i]};
  std::sort(ranked.begin(), ranked.end(), [](const Candidate& a, const Candidate& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.class_id < b.class_id;
  });
  ranked.resize(k);
  return ranked;
}

template <typename Real>
RankedCandidates predict_topk(const ModelWeights<Real>& weights, const InputTensorSequence& input,
                              std::uint32_t k) {
  if (k < 1 || k > weights.spec.num_classes) {
    throw Error(ErrorCode::kBadK, "k=" + std::to_string(k) + " outside [1, " +
                                      std::to_string(weights.spec.num_classes) + "]");
  }
  const auto logits = forward(weights, input, Mode::kInfer);
  const std::vector<double> wide(logits.begin(), logits.end());
  const auto p = softmax<double>(wide);
  return rank_probabilities(p, k);
}

#define LIPLINK_INSTANTIATE_MODEL(Real)                                                     \
  template struct ModelWeights<Real>;                                                       \
  template ModelWeights<Real> initialize_weights<Real>(const ModelSpec&, std::uint64_t);    \
  template std::vector<Real> forward(const ModelWeights<Real>&, const InputTensorSequence&, \
                                     Mode, Rng*);                                           \
  template SampleLoss accumulate_gradient(const ModelWeights<Real>&,                        \
                                          const InputTensorSequence&, std::uint32_t,        \
                                          ModelWeights<Real>&, Real, Mode, Rng*);           \
  template RankedCandidates predict_topk(const ModelWeights<Real>&,                         \
                                         const InputTensorSequence&, std::uint32_t);

LIPLINK_INSTANTIATE_MODEL(float)
LIPLINK_INSTANTIATE_MODEL(double)
LIPLINK_INSTANTIATE_MODEL(long double)

#undef LIPLINK_INSTANTIATE_MODEL

}  // namespace liplink::nn
