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
#include <functional>
#include <string>

#include "liplink/nn/model.hpp"
#include "liplink/nn/train.hpp"

namespace liplink::nn {

using AnalyticGradient =
    std::function<ModelWeights<double>(const ModelWeights<double>&, const LabeledSequence&)>;

// Backpropagated loss gradient of a single sample, dropout off.
ModelWeights<double> analytic_gradient(const ModelWeights<double>& weights,
                                       const LabeledSequence& sample);

double sample_loss(const ModelWeights<double>& weights, const LabeledSequence& sample);

struct GradientCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t parameters_checked = 0;
};

// Compares `analytic` against central differences (f(w+e) - f(w-e)) / 2e on
// every parameter, evaluated in extended precision. Relative error is
// |a - n| / max(|a|, |n|, 1e-12).
GradientCheckResult gradient_check(const ModelWeights<double>& weights,
                                   const LabeledSequence& sample, double epsilon,
                                   const AnalyticGradient& analytic = analytic_gradient);

// Convenience: freshly initialised weights for `spec` (dropout forced off).
GradientCheckResult gradient_check(const ModelSpec& spec, const LabeledSequence& sample,
                                   double epsilon, std::uint64_t seed = 0);

}  // namespace liplink::nn
