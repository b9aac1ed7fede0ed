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

#include "liplink/nn/gradient_check.hpp"

#include <algorithm>
#include <cmath>

namespace liplink::nn {

ModelWeights<double> analytic_gradient(const ModelWeights<double>& weights,
                                       const LabeledSequence& sample) {
  auto grads = ModelWeights<double>::zeros(weights.spec);
  accumulate_gradient(weights, sample.input, sample.label, grads, 1.0, Mode::kInfer);
  return grads;
}

double sample_loss(const ModelWeights<double>& weights, const LabeledSequence& sample) {
  const auto logits = forward(weights, sample.input, Mode::kInfer);
  return softmax_cross_entropy<double>(logits, sample.label).loss;
}

namespace {

long double extended_loss(const ModelWeights<long double>& weights, const LabeledSequence& sample) {
  const auto logits = forward(weights, sample.input, Mode::kInfer);
  return softmax_cross_entropy<long double>(logits, sample.label).loss;
}

}  // namespace

GradientCheckResult gradient_check(const ModelWeights<double>& weights,
                                   const LabeledSequence& sample, double epsilon,
                                   const AnalyticGradient& analytic) {
  const auto grads = analytic(weights, sample);
  // Extended precision keeps the loss quantisation well below the smallest
  // gradients the tiny spec produces.
  auto probe = weights.cast<long double>();
  auto slots = probe.named();
  const auto grad_slots = grads.named();
  GradientCheckResult result;
  for (std::size_t p = 0; p < slots.size(); ++p) {
    Tensor<long double>& tensor = *slots[p].second;
    const Tensor<double>& grad = *grad_slots[p].second;
    for (std::size_t i = 0; i < tensor.size(); ++i) {
      const long double original = tensor[i];
      const long double step = epsilon;
      tensor[i] = original + step;
      const long double up = extended_loss(probe, sample);
      tensor[i] = original - step;
      const long double down = extended_loss(probe, sample);
      tensor[i] = original;
      const double numeric = static_cast<double>((up - down) / (2 * step));
      const double a = grad[i];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-12});
      const double rel = std::abs(a - numeric) / denom;
      ++result.parameters_checked;
      if (result.worst_parameter.empty() || rel > result.max_relative_error) {
        result.max_relative_error = rel;
        result.worst_parameter = slots[p].first;
        result.worst_index = i;
        result.worst_analytic = a;
        result.worst_numeric = numeric;
      }
    }
  }
  return result;
}

GradientCheckResult gradient_check(const ModelSpec& spec, const LabeledSequence& sample,
                                   double epsilon, std::uint64_t seed) {
  ModelSpec no_dropout = spec;
  no_dropout.dropout_rate = 0.0;
  return gradient_check(initialize_weights<double>(no_dropout, seed), sample, epsilon);
}

}  // namespace liplink::nn
