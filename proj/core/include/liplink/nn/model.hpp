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
#include <string>
#include <utility>
#include <vector>

#include "liplink/media/preprocess.hpp"
#include "liplink/nn/layers.hpp"
#include "liplink/nn/model_spec.hpp"
#include "liplink/nn/tensor.hpp"

namespace liplink::nn {

using media::InputTensorSequence;

// Parameters of a ModelSpec. Kernels follow the [in, out] convention for the
// dense and recurrent parts; LSTM gate blocks are ordered (i, f, g, o).
template <typename Real>
struct ModelWeights {
  ModelSpec spec;
  std::vector<Tensor<Real>> conv_kernels;  // [C_out, C_in, 3, 3]
  std::vector<Tensor<Real>> conv_biases;   // [C_out]
  Tensor<Real> lstm_input_kernel;          // [F, 4H]
  Tensor<Real> lstm_recurrent_kernel;      // [H, 4H]
  Tensor<Real> lstm_bias;                  // [4H]
  Tensor<Real> dense_kernel;               // [H, D]
  Tensor<Real> dense_bias;                 // [D]
  Tensor<Real> output_kernel;              // [D, K]
  Tensor<Real> output_bias;                // [K]

  // All-zero parameters shaped for `spec`.
  static ModelWeights zeros(const ModelSpec& spec);

  // Stable (name, tensor) listing used by serialisation, the optimiser and
  // gradient checking.
  std::vector<std::pair<std::string, Tensor<Real>*>> named();
  std::vector<std::pair<std::string, const Tensor<Real>*>> named() const;

  std::size_t parameter_count() const;

  template <typename Other>
  ModelWeights<Other> cast() const;

  friend bool operator==(const ModelWeights&, const ModelWeights&) = default;
};

// (name, shape) list a spec instantiates, in serialisation order.
std::vector<std::pair<std::string, Shape>> parameter_shapes(const ModelSpec& spec);

// Uniform(-s, s) with s = 1/sqrt(fan_in) for every kernel; biases zero except
// the LSTM forget gate, which starts at 1.
template <typename Real>
ModelWeights<Real> initialize_weights(const ModelSpec& spec, std::uint64_t seed);

template <typename Real>
std::vector<Real> forward(const ModelWeights<Real>& weights, const InputTensorSequence& input,
                          Mode mode = Mode::kInfer, Rng* rng = nullptr);

struct SampleLoss {
  double loss = 0.0;
  std::uint32_t predicted = 0;
};

// Forward + backward on one sample. The parameter gradient of the
// cross-entropy loss is added into `grads` scaled by `grad_scale`.
template <typename Real>
SampleLoss accumulate_gradient(const ModelWeights<Real>& weights,
                               const InputTensorSequence& input, std::uint32_t label,
                               ModelWeights<Real>& grads, Real grad_scale, Mode mode,
                               Rng* rng = nullptr);

struct Candidate {
  std::uint32_t class_id = 0;
  double probability = 0.0;

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

using RankedCandidates = std::vector<Candidate>;

// Top-k of a probability vector: descending probability, ties by ascending id.
RankedCandidates rank_probabilities(std::span<const double> probabilities, std::uint32_t k);

template <typename Real>
RankedCandidates predict_topk(const ModelWeights<Real>& weights, const InputTensorSequence& input,
                              std::uint32_t k);

template <typename Real>
template <typename Other>
ModelWeights<Other> ModelWeights<Real>::cast() const {
  ModelWeights<Other> out;
  out.spec = spec;
  for (const auto& t : conv_kernels) out.conv_kernels.push_back(t.template cast<Other>());
  for (const auto& t : conv_biases) out.conv_biases.push_back(t.template cast<Other>());
  out.lstm_input_kernel = lstm_input_kernel.template cast<Other>();
  out.lstm_recurrent_kernel = lstm_recurrent_kernel.template cast<Other>();
  out.lstm_bias = lstm_bias.template cast<Other>();
  out.dense_kernel = dense_kernel.template cast<Other>();
  out.dense_bias = dense_bias.template cast<Other>();
  out.output_kernel = output_kernel.template cast<Other>();
  out.output_bias = output_bias.template cast<Other>();
  return out;
}

}  // namespace liplink::nn
