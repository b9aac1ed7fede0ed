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
#include <vector>

#include "liplink/io.hpp"

namespace liplink::media {

// Decoded grayscale video. Every frame holds width*height intensity bytes,
// row-major with a top-left origin.
struct FrameSequence {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t fps = 0;
  std::vector<std::vector<std::uint8_t>> frames;

  std::size_t frame_count() const { return frames.size(); }
  std::size_t frame_size() const { return std::size_t{width} * height; }

  // Throws ZeroDimension or ShapeMismatch when the invariants do not hold.
  void validate() const;
};

inline constexpr std::size_t kLvfHeaderSize = 20;

// LVF container: "LVF1", u32 width, u32 height, u32 fps, u32 frame_count
// (little-endian), then the raw frames back to back. No padding or trailer.
FrameSequence decode_lvf(std::span<const std::uint8_t> bytes);
Bytes encode_lvf(const FrameSequence& sequence);

}  // namespace liplink::media
