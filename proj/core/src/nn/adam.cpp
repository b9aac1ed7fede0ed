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

#include "liplink/nn/adam.hpp"

#include <cmath>

namespace liplink::nn {

template <typename Real>
void adam_update(std::span<Real> weights, std::span<const Real> grads, std::span<Real> first_moment,
                 std::span<Real> second_moment, const TrainConfig& config, std::uint64_t step) {
  if (grads.size() != weights.size() || first_moment.size() != weights.size() ||
      second_moment.size() != weights.size()) {
    throw Error(ErrorCode::kShapeMismatch, "adam state does not match parameter block");
  }
  if (step < 1) throw Error(ErrorCode::kBadParams, "adam step counter starts at 1");
  const double b1 = config.adam_beta1;
  const double b2 = config.adam_beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(step));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(step));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double g = grads[i];
    const double m = b1 * first_moment[i] + (1.0 - b1) * g;
    const double v = b2 * second_moment[i] + (1.0 - b2) * g * g;
    first_moment[i] = static_cast<Real>(m);
    second_moment[i] = static_cast<Real>(v);
    const double m_hat = m / correction1;
    const double v_hat = v / correction2;
    weights[i] = static_cast<Real>(weights[i] -
                                   config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_epsilon));
  }
}

template <typename Real>
void adam_step(ModelWeights<Real>& weights, const ModelWeights<Real>& grads,
               AdamState<Real>& state, const TrainConfig& config, std::uint64_t step) {
  if (!(weights.spec == grads.spec) || !(weights.spec == state.first_moment.spec) ||
      !(weights.spec == state.second_moment.spec)) {
    throw Error(ErrorCode::kShapeMismatch, "adam operands were built for different specs");
  }
  auto w = weights.named();
  const auto g = grads.named();
  auto m = state.first_moment.named();
  auto v = state.second_moment.named();
  for (std::size_t i = 0; i < w.size(); ++i) {
    adam_update<Real>(w[i].second->values(), g[i].second->values(), m[i].second->values(),
                      v[i].second->values(), config, step);
  }
}

template void adam_update<float>(std::span<float>, std::span<const float>, std::span<float>,
                                 std::span<float>, const TrainConfig&, std::uint64_t);
template void adam_update<double>(std::span<double>, std::span<const double>, std::span<double>,
                                  std::span<double>, const TrainConfig&, std::uint64_t);
template void adam_step<float>(ModelWeights<float>&, const ModelWeights<float>&,
                               AdamState<float>&, const TrainConfig&, std::uint64_t);
template void adam_step<double>(ModelWeights<double>&, const ModelWeights<double>&,
                                AdamState<double>&, const TrainConfig&, std::uint64_t);

}  // namespace liplink::nn
