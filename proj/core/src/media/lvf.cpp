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

#include "liplink/media/lvf.hpp"

#include <algorithm>
#include <string>

#include "liplink/error.hpp"

namespace liplink::media {

namespace {
constexpr std::uint8_t kMagic[4] = {'L', 'V', 'F', '1'};
}

void FrameSequence::validate() const {
  if (width == 0 || height == 0 || frames.empty()) {
    throw Error(ErrorCode::kZeroDimension, "frame sequence has a zero dimension");
  }
  for (const auto& frame : frames) {
    if (frame.size() != frame_size()) {
      throw Error(ErrorCode::kShapeMismatch, "frame holds " + std::to_string(frame.size()) +
                                                 " samples, expected " +
                                                 std::to_string(frame_size()));
    }
  }
}

FrameSequence decode_lvf(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw Error(ErrorCode::kBadMagic, "not an LVF stream");
  }
  if (bytes.size() < kLvfHeaderSize) {
    throw Error(ErrorCode::kTruncatedStream, "LVF header is incomplete");
  }
  FrameSequence seq;
  seq.width = get_u32_le(bytes, 4);
  seq.height = get_u32_le(bytes, 8);
  seq.fps = get_u32_le(bytes, 12);
  const std::uint32_t count = get_u32_le(bytes, 16);
  if (seq.width == 0 || seq.height == 0 || count == 0) {
    throw Error(ErrorCode::kZeroDimension, "LVF header declares a zero dimension");
  }
  const std::uint64_t frame_size = std::uint64_t{seq.width} * seq.height;
  const std::uint64_t payload = frame_size * count;
  const std::uint64_t available = bytes.size() - kLvfHeaderSize;
  if (available < payload) {
    throw Error(ErrorCode::kTruncatedStream, "LVF payload holds " + std::to_string(available) +
                                                 " bytes, header promises " +
                                                 std::to_string(payload));
  }
  if (available > payload) {
    throw Error(ErrorCode::kSchemaError, "trailing bytes after LVF payload");
  }
  seq.frames.reserve(count);
  auto cursor = bytes.begin() + kLvfHeaderSize;
  for (std::uint32_t i = 0; i < count; ++i) {
    seq.frames.emplace_back(cursor, cursor + static_cast<std::ptrdiff_t>(frame_size));
    cursor += static_cast<std::ptrdiff_t>(frame_size);
  }
  return seq;
}

Bytes encode_lvf(const FrameSequence& sequence) {
  sequence.validate();
  Bytes out(std::begin(kMagic), std::end(kMagic));
  out.reserve(kLvfHeaderSize + sequence.frame_size() * sequence.frame_count());
  put_u32_le(out, sequence.width);
  put_u32_le(out, sequence.height);
  put_u32_le(out, sequence.fps);
  put_u32_le(out, static_cast<std::uint32_t>(sequence.frame_count()));
  for (const auto& frame : sequence.frames) out.insert(out.end(), frame.begin(), frame.end());
  return out;
}

}  // namespace liplink::media
