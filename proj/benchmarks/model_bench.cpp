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

#include <benchmark/benchmark.h>

#include "liplink/dataset/synthetic.hpp"
#include "liplink/nn/layers.hpp"
#include "liplink/nn/model.hpp"

namespace {

using namespace liplink;

void BM_Conv2dForward(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  nn::Tensor<float> input({8, side, side}, 0.5f);
  nn::Tensor<float> kernel({16, 8, 3, 3}, 0.01f);
  nn::Tensor<float> bias({16}, 0.0f);
  for (auto _ : state) benchmark::DoNotOptimize(nn::conv2d_forward(input, kernel, bias));
}
BENCHMARK(BM_Conv2dForward)->Arg(16)->Arg(32);

void BM_ModelForward(benchmark::State& state) {
  nn::ModelSpec spec;
  spec.num_classes = 10;
  const auto weights = nn::initialize_weights<float>(spec, 1);
  dataset::SyntheticParams params;
  const auto clip = dataset::render_synthetic(params, 3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(nn::forward(weights, clip));
}
BENCHMARK(BM_ModelForward)->Unit(benchmark::kMillisecond);

void BM_TrainingStep(benchmark::State& state) {
  nn::ModelSpec spec;
  spec.num_classes = 10;
  const auto weights = nn::initialize_weights<float>(spec, 1);
  auto grads = nn::ModelWeights<float>::zeros(spec);
  dataset::SyntheticParams params;
  const auto clip = dataset::render_synthetic(params, 3, 0);
  nn::Rng rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        nn::accumulate_gradient(weights, clip, 3, grads, 1.0f, nn::Mode::kTrain, &rng));
  }
}
BENCHMARK(BM_TrainingStep)->Unit(benchmark::kMillisecond);

}  // namespace
