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
#include <optional>
#include <span>
#include <vector>

#include "liplink/media/landmarks.hpp"
#include "liplink/media/lvf.hpp"
#include "liplink/media/roi.hpp"

namespace liplink::media {

// Network input: `length` frames of side x side intensities in [0, 1].
struct InputTensorSequence {
  std::uint32_t length = 0;
  std::uint32_t side = 0;
  std::vector<float> values;

  std::size_t frame_size() const { return std::size_t{side} * side; }
  std::span<const float> frame(std::size_t t) const {
    return std::span<const float>(values).subspan(t * frame_size(), frame_size());
  }

  friend bool operator==(const InputTensorSequence&, const InputTensorSequence&) = default;
};

inline constexpr std::uint32_t kDefaultSequenceLength = 25;

// Source frame index feeding each of the `target_length` output frames.
// Longer inputs are subsampled at round(i * (n - 1) / (T - 1)); shorter ones
// are padded by repeating the last frame.
std::vector<std::size_t> temporal_indices(std::size_t source_length, std::uint32_t target_length);

// Mouth crop of a single frame. Falls back to the lower-face crop when no
// landmarks are given or the landmark box is degenerate.
Image extract_mouth(const FrameSequence& frames, std::size_t index,
                    const FrameLandmarks* landmarks, const RoiConfig& config);

InputTensorSequence preprocess_recording(const FrameSequence& frames,
                                         const std::optional<LandmarkTrack>& landmarks,
                                         const RoiConfig& config, std::uint32_t target_length);

}  // namespace liplink::media
