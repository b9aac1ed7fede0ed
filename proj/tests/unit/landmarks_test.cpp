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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "liplink/error.hpp"
#include "liplink/media/landmarks.hpp"

namespace liplink::media {
namespace {

nlohmann::json frame_of(std::size_t points, double x = 0.0, double y = 0.0) {
  auto frame = nlohmann::json::array();
  for (std::size_t i = 0; i < points; ++i) frame.push_back({x, y});
  return frame;
}

ErrorCode parse_error(const std::string& text) {
  try {
    parse_landmarks(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parse succeeded";
  return ErrorCode::kIoError;
}

TEST(Landmarks, SingleZeroFrame) {
  const nlohmann::json doc = {{"frames", {frame_of(68)}}};
  const auto track = parse_landmarks(doc.dump());
  ASSERT_EQ(track.frame_count(), 1u);
  for (const auto& p : track.frames[0]) EXPECT_EQ(p, (Point{0.0, 0.0}));
}

TEST(Landmarks, WrongPointCount) {
  const nlohmann::json doc = {{"frames", {frame_of(68), frame_of(67)}}};
  EXPECT_EQ(parse_error(doc.dump()), ErrorCode::kWrongPointCount);
}

TEST(Landmarks, OrderAndValuesPreserved) {
  auto f0 = frame_of(68, 1.5, 2.5);
  auto f1 = frame_of(68, 3.25, 4.75);
  f0[48] = {100.0, 200.0};
  f1[48] = {102.0, 201.0};
  const nlohmann::json doc = {{"frames", {f0, f1}}};
  const auto track = parse_landmarks(doc.dump());
  ASSERT_EQ(track.frame_count(), 2u);
  EXPECT_EQ(track.frames[0][48], (Point{100.0, 200.0}));
  EXPECT_EQ(track.frames[1][48], (Point{102.0, 201.0}));
  EXPECT_EQ(track.frames[1][0], (Point{3.25, 4.75}));
  const auto again = parse_landmarks(serialize_landmarks(track));
  EXPECT_EQ(again.frames, track.frames);
}

TEST(Landmarks, SchemaErrors) {
  EXPECT_EQ(parse_error("not json"), ErrorCode::kSchemaError);
  EXPECT_EQ(parse_error("[]"), ErrorCode::kSchemaError);
  EXPECT_EQ(parse_error(R"({"frames": 3})"), ErrorCode::kSchemaError);
  auto bad = frame_of(68);
  bad[5] = {1.0};
  EXPECT_EQ(parse_error(nlohmann::json{{"frames", {bad}}}.dump()), ErrorCode::kSchemaError);
  bad[5] = {"a", 1.0};
  EXPECT_EQ(parse_error(nlohmann::json{{"frames", {bad}}}.dump()), ErrorCode::kSchemaError);
}

}  // namespace
}  // namespace liplink::media
