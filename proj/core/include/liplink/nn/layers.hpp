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

#include "liplink/nn/rng.hpp"
#include "liplink/nn/tensor.hpp"

namespace liplink::nn {

enum class Mode { kTrain, kInfer };

// ---- 3x3 convolution, stride 1, zero padding 1 --------------------------
// input [C_in, H, W], kernel [C_out, C_in, 3, 3], bias [C_out] -> [C_out, H, W]

template <typename Real>
Tensor<Real> conv2d_forward(const Tensor<Real>& input, const Tensor<Real>& kernel,
                            const Tensor<Real>& bias);

template <typename Real>
struct Conv2dGrads {
  Tensor<Real> input;
  Tensor<Real> kernel;
  Tensor<Real> bias;
};

template <typename Real>
Conv2dGrads<Real> conv2d_backward(const Tensor<Real>& input, const Tensor<Real>& kernel,
                                  const Tensor<Real>& grad_output);

// Adds the kernel and bias gradients into the given accumulators; the input
// gradient is only computed when grad_input is non-null.
template <typename Real>
void conv2d_backward_accumulate(const Tensor<Real>& input, const Tensor<Real>& kernel,
                                const Tensor<Real>& grad_output, Tensor<Real>* grad_input,
                                Tensor<Real>& grad_kernel, Tensor<Real>& grad_bias);

// ---- 2x2 max pooling ------------------------------------------------------

template <typename Real>
struct PoolResult {
  Tensor<Real> output;
  // Flat input index of the winner of each output cell. Ties go to the first
  // position in row-major scan order.
  std::vector<std::uint32_t> argmax;
};

template <typename Real>
PoolResult<Real> maxpool2_forward(const Tensor<Real>& input);

template <typename Real>
Tensor<Real> maxpool2_backward(const Tensor<Real>& grad_output,
                               std::span<const std::uint32_t> argmax, const Shape& input_shape);

// ---- ReLU -----------------------------------------------------------------

template <typename Real>
Tensor<Real> relu(const Tensor<Real>& input);

// Passes the upstream gradient where input > 0; zero elsewhere (including 0).
template <typename Real>
Tensor<Real> relu_backward(const Tensor<Real>& input, const Tensor<Real>& grad_output);

// ---- LSTM -----------------------------------------------------------------
// inputs [T, F], input_kernel [F, 4H], recurrent_kernel [H, 4H], bias [4H].
// Gate blocks are ordered (i, f, g, o); h_0 = c_0 = 0.

template <typename Real>
struct LstmCache {
  Tensor<Real> hidden;  // [T, H]
  Tensor<Real> cell;    // [T, H]
  Tensor<Real> gates;   // [T, 4H], post-activation
};

template <typename Real>
LstmCache<Real> lstm_forward(const Tensor<Real>& inputs, const Tensor<Real>& input_kernel,
                             const Tensor<Real>& recurrent_kernel, const Tensor<Real>& bias);

template <typename Real>
struct LstmGrads {
  Tensor<Real> inputs;
  Tensor<Real> input_kernel;
  Tensor<Real> recurrent_kernel;
  Tensor<Real> bias;
};

// grad_hidden [T, H] is the loss gradient with respect to every h_t.
template <typename Real>
LstmGrads<Real> lstm_backward(const Tensor<Real>& inputs, const Tensor<Real>& input_kernel,
                              const Tensor<Real>& recurrent_kernel, const LstmCache<Real>& cache,
                              const Tensor<Real>& grad_hidden);

template <typename Real>
void lstm_backward_accumulate(const Tensor<Real>& inputs, const Tensor<Real>& input_kernel,
                              const Tensor<Real>& recurrent_kernel, const LstmCache<Real>& cache,
                              const Tensor<Real>& grad_hidden, Tensor<Real>* grad_inputs,
                              Tensor<Real>& grad_input_kernel,
                              Tensor<Real>& grad_recurrent_kernel, Tensor<Real>& grad_bias);

// ---- Inverted dropout ------------------------------------------------------

template <typename Real>
struct DropoutResult {
  Tensor<Real> output;
  std::vector<std::uint8_t> keep;  // 1 = kept
};

// Inference mode is the identity and draws nothing from rng.
template <typename Real>
DropoutResult<Real> dropout(const Tensor<Real>& input, double rate, Mode mode, Rng& rng);

template <typename Real>
Tensor<Real> apply_dropout_mask(const Tensor<Real>& input, std::span<const std::uint8_t> keep,
                                double rate);

// ---- Fully connected -------------------------------------------------------
// input [F], kernel [F, D], bias [D] -> [D]

template <typename Real>
Tensor<Real> dense_forward(const Tensor<Real>& input, const Tensor<Real>& kernel,
                           const Tensor<Real>& bias);

template <typename Real>
struct DenseGrads {
  Tensor<Real> input;
  Tensor<Real> kernel;
  Tensor<Real> bias;
};

template <typename Real>
DenseGrads<Real> dense_backward(const Tensor<Real>& input, const Tensor<Real>& kernel,
                                const Tensor<Real>& grad_output);

template <typename Real>
void dense_backward_accumulate(const Tensor<Real>& input, const Tensor<Real>& kernel,
                               const Tensor<Real>& grad_output, Tensor<Real>* grad_input,
                               Tensor<Real>& grad_kernel, Tensor<Real>& grad_bias);

// ---- Softmax + categorical cross-entropy ----------------------------------

template <typename Real>
std::vector<Real> softmax(std::span<const Real> logits);

template <typename Real>
struct SoftmaxCrossEntropy {
  Real loss;
  std::vector<Real> probabilities;
  std::vector<Real> grad;  // d loss / d logits = p - one_hot(label)
};

template <typename Real>
SoftmaxCrossEntropy<Real> softmax_cross_entropy(std::span<const Real> logits,
                                                std::uint32_t label);

}  // namespace liplink::nn
