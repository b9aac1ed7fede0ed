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

#include "liplink/media/landmarks.hpp"

#include <nlohmann/json.hpp>

#include "liplink/error.hpp"

namespace liplink::media {

using nlohmann::json;

LandmarkTrack parse_landmarks(std::string_view text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::kSchemaError, "landmark file is not a JSON object");
  }
  auto frames = doc.find("frames");
  if (frames == doc.end() || !frames->is_array()) {
    throw Error(ErrorCode::kSchemaError, "landmark file lacks a \"frames\" list");
  }
  LandmarkTrack track;
  track.frames.reserve(frames->size());
  for (std::size_t f = 0; f < frames->size(); ++f) {
    const json& entry = (*frames)[f];
    if (!entry.is_array()) {
      throw Error(ErrorCode::kSchemaError, "frame " + std::to_string(f) + " is not a list");
    }
    if (entry.size() != kLandmarkCount) {
      throw Error(ErrorCode::kWrongPointCount, "frame " + std::to_string(f) + " has " +
                                                   std::to_string(entry.size()) + " points");
    }
    FrameLandmarks points;
    for (std::size_t i = 0; i < kLandmarkCount; ++i) {
      const json& p = entry[i];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw Error(ErrorCode::kSchemaError, "point " + std::to_string(i) + " of frame " +
                                                 std::to_string(f) + " is not an [x, y] pair");
      }
      points[i] = {p[0].get<double>(), p[1].get<double>()};
    }
    track.frames.push_back(points);
  }
  return track;
}

std::string serialize_landmarks(const LandmarkTrack& track) {
  json frames = json::array();
  for (const auto& points : track.frames) {
    json entry = json::array();
    for (const auto& p : points) entry.push_back({p.x, p.y});
    frames.push_back(std::move(entry));
  }
  return json{{"frames", std::move(frames)}}.dump();
}

}  // namespace liplink::media
