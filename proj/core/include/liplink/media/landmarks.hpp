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

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace liplink::media {

inline constexpr std::size_t kLandmarkCount = 68;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

using FrameLandmarks = std::array<Point, kLandmarkCount>;

// Per-frame 68-point facial annotation in pixel units, LVF origin.
struct LandmarkTrack {
  std::vector<FrameLandmarks> frames;

  std::size_t frame_count() const { return frames.size(); }
};

// Schema: {"frames": [[[x, y] x 68], ...]}.
LandmarkTrack parse_landmarks(std::string_view text);
std::string serialize_landmarks(const LandmarkTrack& track);

}  // namespace liplink::media
