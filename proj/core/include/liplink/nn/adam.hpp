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

#include "liplink/nn/model.hpp"
#include "liplink/nn/model_spec.hpp"

namespace liplink::nn {

// One bias-corrected ADAM update of a flat parameter block at step t >= 1:
//   m <- b1 m + (1 - b1) g,  v <- b2 v + (1 - b2) g^2
//   w <- w - lr * (m / (1 - b1^t)) / (sqrt(v / (1 - b2^t)) + eps)
template <typename Real>
void adam_update(std::span<Real> weights, std::span<const Real> grads, std::span<Real> first_moment,
                 std::span<Real> second_moment, const TrainConfig& config, std::uint64_t step);

template <typename Real>
struct AdamState {
  ModelWeights<Real> first_moment;
  ModelWeights<Real> second_moment;

  static AdamState zeros(const ModelSpec& spec) {
    return {ModelWeights<Real>::zeros(spec), ModelWeights<Real>::zeros(spec)};
  }
};

template <typename Real>
void adam_step(ModelWeights<Real>& weights, const ModelWeights<Real>& grads,
               AdamState<Real>& state, const TrainConfig& config, std::uint64_t step);

}  // namespace liplink::nn
