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
#include <vector>

#include "liplink/media/lvf.hpp"
#include "liplink/media/preprocess.hpp"

namespace liplink::dataset {

// Synthetic stand-in for recorded utterances. Class k is a filled ellipse
// centred in an N x N frame whose vertical half-axis follows
//   a(t) = (N/4) * (0.55 + 0.45 * sin(2 pi f_k t / T + phi_k))
// with f_k = 1 + (k mod 4) and phi_k = 2 pi floor(k/4) / ceil(K/4); the
// horizontal half-axis is N/3. Uniform noise in [-noise, noise] is added and
// the result clipped to [0, 1].
struct SyntheticParams {
  std::uint32_t num_classes = 10;
  std::uint32_t reps = 5;
  std::uint32_t length = 25;
  std::uint32_t side = 32;
  double noise = 0.05;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Oscillation {
  double frequency = 0.0;
  double phase = 0.0;
};

Oscillation class_oscillation(std::uint32_t class_id, std::uint32_t num_classes);

struct SyntheticSample {
  std::uint32_t label = 0;
  std::uint32_t repetition = 0;
  media::InputTensorSequence input;
};

// Deterministic in (params, class_id, repetition).
media::InputTensorSequence render_synthetic(const SyntheticParams& params, std::uint32_t class_id,
                                            std::uint32_t repetition);

// Class-major: all repetitions of class 0, then class 1, ...
std::vector<SyntheticSample> generate_synthetic(const SyntheticParams& params);

// Embeds the clip in a 2N x 2N canvas at exactly the square the lower-face
// fallback crop selects, quantised to bytes. Preprocessing the result without
// landmarks at output side N recovers the clip up to 8-bit quantisation.
media::FrameSequence to_face_canvas(const media::InputTensorSequence& clip, std::uint32_t fps);

}  // namespace liplink::dataset
