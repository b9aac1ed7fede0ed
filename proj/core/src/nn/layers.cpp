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

#include "liplink/nn/layers.hpp"

#include <algorithm>
#include <cmath>

namespace liplink::nn {

namespace {

template <typename Real>
Real sigmoid(Real x) {
  return Real{1} / (Real{1} + std::exp(-x));
}

void require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorCode::kShapeMismatch, message);
}

// Valid output rows/columns for a tap offset d in a same-padded 3x3 window.
struct Span1D {
  std::size_t begin;
  std::size_t end;
};

Span1D valid_range(std::size_t n, int d) {
  const auto begin = static_cast<std::size_t>(std::max(0, -d));
  const auto end = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
      0, static_cast<std::ptrdiff_t>(n) - std::max(0, d)));
  return {begin, end};
}

template <typename Real>
void check_conv_shapes(const Tensor<Real>& input, const Tensor<Real>& kernel,
                       const Tensor<Real>& bias) {
  require(input.rank() == 3, "conv2d input must be [C, H, W]");
  require(kernel.rank() == 4 && kernel.dim(2) == 3 && kernel.dim(3) == 3,
          "conv2d kernel must be [C_out, C_in, 3, 3]");
  require(kernel.dim(1) == input.dim(0), "conv2d kernel input channels disagree with input");
  require(bias.rank() == 1 && bias.dim(0) == kernel.dim(0), "conv2d bias must be [C_out]");
}

}  // namespace

template <typename Real>
Tensor<Real> conv2d_forward(const Tensor<Real>& input, const Tensor<Real>& kernel,
                            const Tensor<Real>& bias) {
  check_conv_shapes(input, kernel, bias);
  const std::size_t cin = input.dim(0), h = input.dim(1), w = input.dim(2);
  const std::size_t cout = kernel.dim(0);
  const std::size_t plane = h * w;
  Tensor<Real> out({cout, h, w});
  for (std::size_t co = 0; co < cout; ++co) {
    Real* dst = out.data() + co * plane;
    std::fill(dst, dst + plane, bias[co]);
    for (std::size_t ci = 0; ci < cin; ++ci) {
      const Real* src = input.data() + ci * plane;
      const Real* k = kernel.data() + (co * cin + ci) * 9;
      for (int ky = 0; ky < 3; ++ky) {
        const int dy = ky - 1;
        const auto rows = valid_range(h, dy);
        for (int kx = 0; kx < 3; ++kx) {
          const int dx = kx - 1;
          const auto cols = valid_range(w, dx);
          const Real wgt = k[ky * 3 + kx];
          for (std::size_t y = rows.begin; y < rows.end; ++y) {
            Real* out_row = dst + y * w;
            const Real* in_row = src + (y + dy) * w + dx;
            for (std::size_t x = cols.begin; x < cols.end; ++x) out_row[x] += wgt * in_row[x];
          }
        }
      }
    }
  }
  return out;
}

template <typename Real>
void conv2d_backward_accumulate(const Tensor<Real>& input, const Tensor<Real>& kernel,
                                const Tensor<Real>& grad_output, Tensor<Real>* grad_input,
                                Tensor<Real>& grad_kernel, Tensor<Real>& grad_bias) {
  const std::size_t cin = input.dim(0), h = input.dim(1), w = input.dim(2);
  const std::size_t cout = kernel.dim(0);
  const std::size_t plane = h * w;
  grad_output.require_shape({cout, h, w}, "conv2d grad_output");
  grad_kernel.require_shape(kernel.shape(), "conv2d grad_kernel");
  grad_bias.require_shape({cout}, "conv2d grad_bias");
  if (grad_input != nullptr) grad_input->require_shape(input.shape(), "conv2d grad_input");

  for (std::size_t co = 0; co < cout; ++co) {
    const Real* g = grad_output.data() + co * plane;
    Real bias_sum = 0;
    for (std::size_t i = 0; i < plane; ++i) bias_sum += g[i];
    grad_bias[co] += bias_sum;
    for (std::size_t ci = 0; ci < cin; ++ci) {
      const Real* src = input.data() + ci * plane;
      const Real* k = kernel.data() + (co * cin + ci) * 9;
      Real* gk = grad_kernel.data() + (co * cin + ci) * 9;
      Real* gi = grad_input ? grad_input->data() + ci * plane : nullptr;
      for (int ky = 0; ky < 3; ++ky) {
        const int dy = ky - 1;
        const auto rows = valid_range(h, dy);
        for (int kx = 0; kx < 3; ++kx) {
          const int dx = kx - 1;
          const auto cols = valid_range(w, dx);
          const Real wgt = k[ky * 3 + kx];
          Real acc = 0;
          for (std::size_t y = rows.begin; y < rows.end; ++y) {
            const Real* g_row = g + y * w;
            const Real* in_row = src + (y + dy) * w + dx;
            for (std::size_t x = cols.begin; x < cols.end; ++x) acc += g_row[x] * in_row[x];
            if (gi != nullptr) {
              Real* gi_row = gi + (y + dy) * w + dx;
              for (std::size_t x = cols.begin; x < cols.end; ++x) gi_row[x] += wgt * g_row[x];
            }
          }
          gk[ky * 3 + kx] += acc;
        }
      }
    }
  }
}

template <typename Real>
Conv2dGrads<Real> conv2d_backward(const Tensor<Real>& input, const Tensor<Real>& kernel,
                                  const Tensor<Real>& grad_output) {
  require(input.rank() == 3 && kernel.rank() == 4, "conv2d_backward expects [C,H,W] input");
  Conv2dGrads<Real> grads{Tensor<Real>(input.shape()), Tensor<Real>(kernel.shape()),
                          Tensor<Real>({kernel.dim(0)})};
  conv2d_backward_accumulate(input, kernel, grad_output, &grads.input, grads.kernel,
                             grads.bias);
  return grads;
}

template <typename Real>
PoolResult<Real> maxpool2_forward(const Tensor<Real>& input) {
  require(input.rank() == 3, "maxpool input must be [C, H, W]");
  const std::size_t c = input.dim(0), h = input.dim(1), w = input.dim(2);
  if (h % 2 != 0 || w % 2 != 0) {
    throw Error(ErrorCode::kOddDimension, "maxpool2 needs even spatial dimensions, got " +
                                              shape_to_string(input.shape()));
  }
  const std::size_t oh = h / 2, ow = w / 2;
  PoolResult<Real> result{Tensor<Real>({c, oh, ow}), std::vector<std::uint32_t>(c * oh * ow)};
  for (std::size_t ch = 0; ch < c; ++ch) {
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        std::size_t best = (ch * h + 2 * oy) * w + 2 * ox;
        for (std::size_t dy = 0; dy < 2; ++dy) {
          for (std::size_t dx = 0; dx < 2; ++dx) {
            const std::size_t idx = (ch * h + 2 * oy + dy) * w + 2 * ox + dx;
            if (input[idx] > input[best]) best = idx;
          }
        }
        const std::size_t o = (ch * oh + oy) * ow + ox;
        result.output[o] = input[best];
        result.argmax[o] = static_cast<std::uint32_t>(best);
      }
    }
  }
  return result;
}

template <typename Real>
Tensor<Real> maxpool2_backward(const Tensor<Real>& grad_output,
                               std::span<const std::uint32_t> argmax, const Shape& input_shape) {
  require(argmax.size() == grad_output.size(), "maxpool argmax record disagrees with gradient");
  Tensor<Real> grad(input_shape);
  for (std::size_t o = 0; o < argmax.size(); ++o) grad[argmax[o]] += grad_output[o];
  return grad;
}

template <typename Real>
Tensor<Real> relu(const Tensor<Real>& input) {
  Tensor<Real> out(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) out[i] = input[i] > Real{0} ? input[i] : Real{0};
  return out;
}

template <typename Real>
Tensor<Real> relu_backward(const Tensor<Real>& input, const Tensor<Real>& grad_output) {
  grad_output.require_shape(input.shape(), "relu grad_output");
  Tensor<Real> grad(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) {
    grad[i] = input[i] > Real{0} ? grad_output[i] : Real{0};
  }
  return grad;
}

template <typename Real>
LstmCache<Real> lstm_forward(const Tensor<Real>& inputs, const Tensor<Real>& input_kernel,
                             const Tensor<Real>& recurrent_kernel, const Tensor<Real>& bias) {
  require(inputs.rank() == 2, "lstm inputs must be [T, F]");
  require(input_kernel.rank() == 2 && input_kernel.dim(1) % 4 == 0,
          "lstm input kernel must be [F, 4H]");
  const std::size_t steps = inputs.dim(0), features = inputs.dim(1);
  const std::size_t h4 = input_kernel.dim(1), hidden = h4 / 4;
  input_kernel.require_shape({features, h4}, "lstm input kernel");
  recurrent_kernel.require_shape({hidden, h4}, "lstm recurrent kernel");
  bias.require_shape({h4}, "lstm bias");

  LstmCache<Real> cache{Tensor<Real>({steps, hidden}), Tensor<Real>({steps, hidden}),
                        Tensor<Real>({steps, h4})};
  std::vector<Real> z(h4);
  std::vector<Real> h_prev(hidden, Real{0}), c_prev(hidden, Real{0});
  for (std::size_t t = 0; t < steps; ++t) {
    std::copy(bias.data(), bias.data() + h4, z.begin());
    const Real* x = inputs.data() + t * features;
    for (std::size_t f = 0; f < features; ++f) {
      const Real xf = x[f];
      if (xf == Real{0}) continue;
      const Real* row = input_kernel.data() + f * h4;
      for (std::size_t j = 0; j < h4; ++j) z[j] += xf * row[j];
    }
    for (std::size_t k = 0; k < hidden; ++k) {
      const Real hk = h_prev[k];
      if (hk == Real{0}) continue;
      const Real* row = recurrent_kernel.data() + k * h4;
      for (std::size_t j = 0; j < h4; ++j) z[j] += hk * row[j];
    }
    Real* gates = cache.gates.data() + t * h4;
    Real* c = cache.cell.data() + t * hidden;
    Real* h = cache.hidden.data() + t * hidden;
    for (std::size_t k = 0; k < hidden; ++k) {
      const Real i_gate = sigmoid(z[k]);
      const Real f_gate = sigmoid(z[hidden + k]);
      const Real g_gate = std::tanh(z[2 * hidden + k]);
      const Real o_gate = sigmoid(z[3 * hidden + k]);
      gates[k] = i_gate;
      gates[hidden + k] = f_gate;
      gates[2 * hidden + k] = g_gate;
      gates[3 * hidden + k] = o_gate;
      c[k] = f_gate * c_prev[k] + i_gate * g_gate;
      h[k] = o_gate * std::tanh(c[k]);
    }
    std::copy(c, c + hidden, c_prev.begin());
    std::copy(h, h + hidden, h_prev.begin());
  }
  return cache;
}

template <typename Real>
void lstm_backward_accumulate(const Tensor<Real>& inputs, const Tensor<Real>& input_kernel,
                              const Tensor<Real>& recurrent_kernel, const LstmCache<Real>& cache,
                              const Tensor<Real>& grad_hidden, Tensor<Real>* grad_inputs,
                              Tensor<Real>& grad_input_kernel,
                              Tensor<Real>& grad_recurrent_kernel, Tensor<Real>& grad_bias) {
  const std::size_t steps = inputs.dim(0), features = inputs.dim(1);
  const std::size_t h4 = input_kernel.dim(1), hidden = h4 / 4;
  grad_hidden.require_shape({steps, hidden}, "lstm grad_hidden");
  grad_input_kernel.require_shape(input_kernel.shape(), "lstm grad input kernel");
  grad_recurrent_kernel.require_shape(recurrent_kernel.shape(), "lstm grad recurrent kernel");
  grad_bias.require_shape({h4}, "lstm grad bias");
  if (grad_inputs != nullptr) grad_inputs->require_shape(inputs.shape(), "lstm grad inputs");

  std::vector<Real> dh_next(hidden, Real{0}), dc_next(hidden, Real{0});
  std::vector<Real> dz(h4);
  const std::vector<Real> zeros(hidden, Real{0});
  for (std::size_t t = steps; t-- > 0;) {
    const Real* gates = cache.gates.data() + t * h4;
    const Real* c = cache.cell.data() + t * hidden;
    const Real* c_prev = t > 0 ? cache.cell.data() + (t - 1) * hidden : zeros.data();
    const Real* h_prev = t > 0 ? cache.hidden.data() + (t - 1) * hidden : zeros.data();
    const Real* gh = grad_hidden.data() + t * hidden;
    for (std::size_t k = 0; k < hidden; ++k) {
      const Real i_gate = gates[k];
      const Real f_gate = gates[hidden + k];
      const Real g_gate = gates[2 * hidden + k];
      const Real o_gate = gates[3 * hidden + k];
      const Real dh = gh[k] + dh_next[k];
      const Real tc = std::tanh(c[k]);
      const Real d_o = dh * tc;
      const Real dc = dh * o_gate * (Real{1} - tc * tc) + dc_next[k];
      dc_next[k] = dc * f_gate;
      dz[k] = dc * g_gate * i_gate * (Real{1} - i_gate);
      dz[hidden + k] = dc * c_prev[k] * f_gate * (Real{1} - f_gate);
      dz[2 * hidden + k] = dc * i_gate * (Real{1} - g_gate * g_gate);
      dz[3 * hidden + k] = d_o * o_gate * (Real{1} - o_gate);
    }
    for (std::size_t j = 0; j < h4; ++j) grad_bias[j] += dz[j];
    const Real* x = inputs.data() + t * features;
    for (std::size_t f = 0; f < features; ++f) {
      const Real* w_row = input_kernel.data() + f * h4;
      if (grad_inputs != nullptr) {
        Real acc = 0;
        for (std::size_t j = 0; j < h4; ++j) acc += w_row[j] * dz[j];
        (*grad_inputs)[t * features + f] = acc;
      }
      const Real xf = x[f];
      if (xf == Real{0}) continue;
      Real* g_row = grad_input_kernel.data() + f * h4;
      for (std::size_t j = 0; j < h4; ++j) g_row[j] += xf * dz[j];
    }
    for (std::size_t k = 0; k < hidden; ++k) {
      const Real* w_row = recurrent_kernel.data() + k * h4;
      Real acc = 0;
      for (std::size_t j = 0; j < h4; ++j) acc += w_row[j] * dz[j];
      dh_next[k] = acc;
      const Real hk = h_prev[k];
      if (hk == Real{0}) continue;
      Real* g_row = grad_recurrent_kernel.data() + k * h4;
      for (std::size_t j = 0; j < h4; ++j) g_row[j] += hk * dz[j];
    }
  }
}

template <typename Real>
LstmGrads<Real> lstm_backward(const Tensor<Real>& inputs, const Tensor<Real>& input_kernel,
                              const Tensor<Real>& recurrent_kernel, const LstmCache<Real>& cache,
                              const Tensor<Real>& grad_hidden) {
  LstmGrads<Real> grads{Tensor<Real>(inputs.shape()), Tensor<Real>(input_kernel.shape()),
                        Tensor<Real>(recurrent_kernel.shape()),
                        Tensor<Real>({input_kernel.dim(1)})};
  lstm_backward_accumulate(inputs, input_kernel, recurrent_kernel, cache, grad_hidden,
                           &grads.inputs, grads.input_kernel, grads.recurrent_kernel,
                           grads.bias);
  return grads;
}

template <typename Real>
Tensor<Real> apply_dropout_mask(const Tensor<Real>& input, std::span<const std::uint8_t> keep,
                                double rate) {
  require(keep.size() == input.size(), "dropout mask size disagrees with input");
  const Real scale = static_cast<Real>(1.0 / (1.0 - rate));
  Tensor<Real> out(input.shape());
  for (std::size_t i = 0; i < input.size(); ++i) out[i] = keep[i] ? input[i] * scale : Real{0};
  return out;
}

template <typename Real>
DropoutResult<Real> dropout(const Tensor<Real>& input, double rate, Mode mode, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw Error(ErrorCode::kBadParams, "dropout rate must lie in [0, 1)");
  }
  DropoutResult<Real> result{input, std::vector<std::uint8_t>(input.size(), 1)};
  if (mode == Mode::kInfer || rate == 0.0) return result;
  for (auto& k : result.keep) k = rng.uniform() >= rate ? 1 : 0;
  result.output = apply_dropout_mask(input, result.keep, rate);
  return result;
}

template <typename Real>
Tensor<Real> dense_forward(const Tensor<Real>& input, const Tensor<Real>& kernel,
                           const Tensor<Real>& bias) {
  require(input.rank() == 1, "dense input must be a vector");
  require(kernel.rank() == 2 && kernel.dim(0) == input.dim(0), "dense kernel must be [F, D]");
  const std::size_t in = kernel.dim(0), out_dim = kernel.dim(1);
  bias.require_shape({out_dim}, "dense bias");
  Tensor<Real> out = bias;
  for (std::size_t f = 0; f < in; ++f) {
    const Real xf = input[f];
    const Real* row = kernel.data() + f * out_dim;
    for (std::size_t d = 0; d < out_dim; ++d) out[d] += xf * row[d];
  }
  return out;
}

template <typename Real>
void dense_backward_accumulate(const Tensor<Real>& input, const Tensor<Real>& kernel,
                               const Tensor<Real>& grad_output, Tensor<Real>* grad_input,
                               Tensor<Real>& grad_kernel, Tensor<Real>& grad_bias) {
  const std::size_t in = kernel.dim(0), out_dim = kernel.dim(1);
  input.require_shape({in}, "dense input");
  grad_output.require_shape({out_dim}, "dense grad_output");
  grad_kernel.require_shape(kernel.shape(), "dense grad kernel");
  grad_bias.require_shape({out_dim}, "dense grad bias");
  if (grad_input != nullptr) grad_input->require_shape({in}, "dense grad input");
  for (std::size_t d = 0; d < out_dim; ++d) grad_bias[d] += grad_output[d];
  for (std::size_t f = 0; f < in; ++f) {
    const Real* row = kernel.data() + f * out_dim;
    Real* g_row = grad_kernel.data() + f * out_dim;
    const Real xf = input[f];
    Real acc = 0;
    for (std::size_t d = 0; d < out_dim; ++d) {
      g_row[d] += xf * grad_output[d];
      acc += row[d] * grad_output[d];
    }
    if (grad_input != nullptr) (*grad_input)[f] = acc;
  }
}

template <typename Real>
DenseGrads<Real> dense_backward(const Tensor<Real>& input, const Tensor<Real>& kernel,
                                const Tensor<Real>& grad_output) {
  require(kernel.rank() == 2, "dense kernel must be [F, D]");
  DenseGrads<Real> grads{Tensor<Real>(input.shape()), Tensor<Real>(kernel.shape()),
                         Tensor<Real>({kernel.dim(1)})};
  dense_backward_accumulate(input, kernel, grad_output, &grads.input, grads.kernel, grads.bias);
  return grads;
}

template <typename Real>
std::vector<Real> softmax(std::span<const Real> logits) {
  if (logits.empty()) throw Error(ErrorCode::kShapeMismatch, "softmax of an empty vector");
  const Real peak = *std::max_element(logits.begin(), logits.end());
  std::vector<Real> p(logits.size());
  Real total = 0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - peak);
    total += p[i];
  }
  for (auto& v : p) v /= total;
  return p;
}

template <typename Real>
SoftmaxCrossEntropy<Real> softmax_cross_entropy(std::span<const Real> logits,
                                                std::uint32_t label) {
  if (logits.size() < 2) throw Error(ErrorCode::kShapeMismatch, "need at least two classes");
  if (label >= logits.size()) {
    throw Error(ErrorCode::kLabelOutOfRange, "label " + std::to_string(label) +
                                                 " with only " + std::to_string(logits.size()) +
                                                 " classes");
  }
  const Real peak = *std::max_element(logits.begin(), logits.end());
  Real total = 0;
  for (const Real z : logits) total += std::exp(z - peak);
  SoftmaxCrossEntropy<Real> out;
  out.loss = std::log(total) - (logits[label] - peak);
  out.probabilities.resize(logits.size());
  out.grad.resize(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out.probabilities[i] = std::exp(logits[i] - peak) / total;
    out.grad[i] = out.probabilities[i] - (i == label ? Real{1} : Real{0});
  }
  return out;
}

#define LIPLINK_INSTANTIATE_LAYERS(Real)                                                      \
  template Tensor<Real> conv2d_forward(const Tensor<Real>&, const Tensor<Real>&,             \
                                       const Tensor<Real>&);                                 \
  template Conv2dGrads<Real> conv2d_backward(const Tensor<Real>&, const Tensor<Real>&,       \
                                             const Tensor<Real>&);                           \
  template void conv2d_backward_accumulate(const Tensor<Real>&, const Tensor<Real>&,         \
                                           const Tensor<Real>&, Tensor<Real>*, Tensor<Real>&, \
                                           Tensor<Real>&);                                   \
  template PoolResult<Real> maxpool2_forward(const Tensor<Real>&);                           \
  template Tensor<Real> maxpool2_backward(const Tensor<Real>&, std::span<const std::uint32_t>, \
                                          const Shape&);                                     \
  template Tensor<Real> relu(const Tensor<Real>&);                                           \
  template Tensor<Real> relu_backward(const Tensor<Real>&, const Tensor<Real>&);             \
  template LstmCache<Real> lstm_forward(const Tensor<Real>&, const Tensor<Real>&,            \
                                        const Tensor<Real>&, const Tensor<Real>&);           \
  template LstmGrads<Real> lstm_backward(const Tensor<Real>&, const Tensor<Real>&,           \
                                         const Tensor<Real>&, const LstmCache<Real>&,        \
                                         const Tensor<Real>&);                               \
  template void lstm_backward_accumulate(const Tensor<Real>&, const Tensor<Real>&,           \
                                         const Tensor<Real>&, const LstmCache<Real>&,        \
                                         const Tensor<Real>&, Tensor<Real>*, Tensor<Real>&,  \
                                         Tensor<Real>&, Tensor<Real>&);                      \
  template DropoutResult<Real> dropout(const Tensor<Real>&, double, Mode, Rng&);             \
  template Tensor<Real> apply_dropout_mask(const Tensor<Real>&, std::span<const std::uint8_t>, \
                                           double);                                          \
  template Tensor<Real> dense_forward(const Tensor<Real>&, const Tensor<Real>&,              \
                                      const Tensor<Real>&);                                  \
  template DenseGrads<Real> dense_backward(const Tensor<Real>&, const Tensor<Real>&,         \
                                           const Tensor<Real>&);                             \
  template void dense_backward_accumulate(const Tensor<Real>&, const Tensor<Real>&,          \
                                          const Tensor<Real>&, Tensor<Real>*, Tensor<Real>&,  \
                                          Tensor<Real>&);                                    \
  template std::vector<Real> softmax(std::span<const Real>);                                 \
  template SoftmaxCrossEntropy<Real> softmax_cross_entropy(std::span<const Real>, std::uint32_t);

LIPLINK_INSTANTIATE_LAYERS(float)
LIPLINK_INSTANTIATE_LAYERS(double)
LIPLINK_INSTANTIATE_LAYERS(long double)

#undef LIPLINK_INSTANTIATE_LAYERS

}  // namespace liplink::nn
