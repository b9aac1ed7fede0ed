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

#include "liplink/media/preprocess.hpp"

#include <string>

#include "liplink/error.hpp"

namespace liplink::media {

std::vector<std::size_t> temporal_indices(std::size_t source_length,
                                          std::uint32_t target_length) {
  if (source_length == 0 || target_length == 0) {
    throw Error(ErrorCode::kZeroDimension, "temporal normalisation needs nonempty lengths");
  }
  std::vector<std::size_t> indices(target_length);
  if (source_length <= target_length) {
    for (std::size_t i = 0; i < target_length; ++i) indices[i] = std::min(i, source_length - 1);
    return indices;
  }
  if (target_length == 1) {
    indices[0] = 0;
    return indices;
  }
  // Integer round-half-up of i * (n - 1) / (T - 1).
  const std::size_t num = source_length - 1;
  const std::size_t den = target_length - 1;
  for (std::size_t i = 0; i < target_length; ++i) indices[i] = (2 * i * num + den) / (2 * den);
  return indices;
}

Image extract_mouth(const FrameSequence& frames, std::size_t index,
                    const FrameLandmarks* landmarks, const RoiConfig& config) {
  PixelBox box;
  bool have_box = false;
  if (landmarks != nullptr) {
    try {
      box = mouth_bounding_box(*landmarks, config, frames.width, frames.height);
      have_box = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateBox) throw;
    }
  }
  if (!have_box) box = fallback_center_crop(frames.width, frames.height);
  return resize_bilinear(crop(frames.frames[index], frames.width, box), config.output_size);
}

InputTensorSequence preprocess_recording(const FrameSequence& frames,
                                         const std::optional<LandmarkTrack>& landmarks,
                                         const RoiConfig& config, std::uint32_t target_length) {
  config.validate();
  frames.validate();
  if (landmarks && landmarks->frame_count() != frames.frame_count()) {
    throw Error(ErrorCode::kLengthMismatch,
                "landmark track has " + std::to_string(landmarks->frame_count()) +
                    " frames, video has " + std::to_string(frames.frame_count()));
  }
  InputTensorSequence out;
  out.length = target_length;
  out.side = config.output_size;
  out.values.reserve(out.frame_size() * target_length);
  for (const std::size_t src : temporal_indices(frames.frame_count(), target_length)) {
    const FrameLandmarks* points = landmarks ? &landmarks->frames[src] : nullptr;
    const Image roi = extract_mouth(frames, src, points, config);
    for (const float v : roi.values) out.values.push_back(v / 255.0f);
  }
  return out;
}

}  // namespace liplink::media
