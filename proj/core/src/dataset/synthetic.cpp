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

#include "liplink/dataset/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "liplink/error.hpp"
#include "liplink/media/roi.hpp"
#include "liplink/nn/rng.hpp"

namespace liplink::dataset {

void SyntheticParams::validate() const {
  auto fail = [](const char* m) { throw Error(ErrorCode::kBadParams, m); };
  if (num_classes < 2) fail("synthetic data needs at least 2 classes");
  if (reps < 1) fail("synthetic data needs at least 1 repetition");
  if (length < 1) fail("synthetic clips need at least 1 frame");
  if (side < 1) fail("synthetic frames need a positive side");
  if (!(noise >= 0.0) || !std::isfinite(noise)) fail("noise must be finite and non-negative");
}

Oscillation class_oscillation(std::uint32_t class_id, std::uint32_t num_classes) {
  const std::uint32_t phase_slots = (num_classes + 3) / 4;
  return {1.0 + static_cast<double>(class_id % 4),
          2.0 * std::numbers::pi * static_cast<double>(class_id / 4) /
              static_cast<double>(phase_slots)};
}

media::InputTensorSequence render_synthetic(const SyntheticParams& params, std::uint32_t class_id,
                                            std::uint32_t repetition) {
  params.validate();
  if (class_id >= params.num_classes) {
    throw Error(ErrorCode::kBadParams, "class id outside the synthetic class range");
  }
  const auto osc = class_oscillation(class_id, params.num_classes);
  const std::uint32_t n = params.side;
  const double center = (static_cast<double>(n) - 1.0) / 2.0;
  const double amplitude = n / 4.0;
  const double half_width = n / 3.0;
  nn::Rng rng(nn::mix_seed(params.seed, class_id, repetition));

  media::InputTensorSequence clip;
  clip.length = params.length;
  clip.side = n;
  clip.values.resize(clip.frame_size() * params.length);
  for (std::uint32_t t = 0; t < params.length; ++t) {
    const double angle = 2.0 * std::numbers::pi * osc.frequency * t / params.length + osc.phase;
    const double half_height = amplitude * (0.55 + 0.45 * std::sin(angle));
    float* frame = clip.values.data() + std::size_t{t} * clip.frame_size();
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t x = 0; x < n; ++x) {
        const double dx = (x - center) / half_width;
        const double dy = (y - center) / half_height;
        double v = dx * dx + dy * dy <= 1.0 ? 1.0 : 0.0;
        v += rng.uniform(-params.noise, params.noise);
        frame[std::size_t{y} * n + x] = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
    }
  }
  return clip;
}

std::vector<SyntheticSample> generate_synthetic(const SyntheticParams& params) {
  params.validate();
  std::vector<SyntheticSample> samples;
  samples.reserve(std::size_t{params.num_classes} * params.reps);
  for (std::uint32_t k = 0; k < params.num_classes; ++k) {
    for (std::uint32_t r = 0; r < params.reps; ++r) {
      samples.push_back({k, r, render_synthetic(params, k, r)});
    }
  }
  return samples;
}

media::FrameSequence to_face_canvas(const media::InputTensorSequence& clip, std::uint32_t fps) {
  const std::uint32_t n = clip.side;
  media::FrameSequence seq;
  seq.width = 2 * n;
  seq.height = 2 * n;
  seq.fps = fps;
  const auto box = media::fallback_center_crop(seq.width, seq.height);
  for (std::uint32_t t = 0; t < clip.length; ++t) {
    std::vector<std::uint8_t> canvas(seq.frame_size(), 0);
    const auto src = clip.frame(t);
    for (std::uint32_t y = 0; y < n; ++y) {
      for (std::uint32_t x = 0; x < n; ++x) {
        const double v = std::clamp<double>(src[std::size_t{y} * n + x], 0.0, 1.0);
        canvas[std::size_t(box.y0 + y) * seq.width + box.x0 + x] =
            static_cast<std::uint8_t>(std::lround(v * 255.0));
      }
    }
    seq.frames.push_back(std::move(canvas));
  }
  return seq;
}

}  // namespace liplink::dataset
