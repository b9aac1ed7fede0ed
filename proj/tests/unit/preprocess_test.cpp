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

#include "liplink/error.hpp"
#include "liplink/media/preprocess.hpp"
#include "liplink/nn/rng.hpp"

namespace liplink::media {
namespace {

FrameSequence constant_frames(std::uint32_t w, std::uint32_t h, std::size_t n, std::uint8_t v) {
  FrameSequence seq{w, h, 25, {}};
  seq.frames.assign(n, std::vector<std::uint8_t>(std::size_t{w} * h, v));
  return seq;
}

TEST(Preprocess, SingleZeroFramePadsToLength) {
  RoiConfig config;
  config.output_size = 8;
  const auto out = preprocess_recording(constant_frames(16, 16, 1, 0), std::nullopt, config, 4);
  EXPECT_EQ(out.length, 4u);
  EXPECT_EQ(out.side, 8u);
  ASSERT_EQ(out.values.size(), 4u * 64u);
  for (float v : out.values) EXPECT_EQ(v, 0.0f);
}

TEST(Preprocess, UniformSubsamplingIndices) {
  const auto idx = temporal_indices(50, 25);
  ASSERT_EQ(idx.size(), 25u);
  EXPECT_EQ(idx[0], 0u);
  EXPECT_EQ(idx[1], 2u);
  EXPECT_EQ(idx[2], 4u);
  EXPECT_EQ(idx[24], 49u);
  for (std::size_t i = 0; i < 25; ++i) {
    EXPECT_EQ(idx[i], static_cast<std::size_t>(std::floor(i * 49.0 / 24.0 + 0.5)));
  }
}

TEST(Preprocess, ShortSequenceRepeatsLastFrame) {
  const auto idx = temporal_indices(3, 6);
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 1, 2, 2, 2, 2}));
}

TEST(Preprocess, SaturatedFramesScaleToOne) {
  RoiConfig config;
  const auto out = preprocess_recording(constant_frames(64, 48, 5, 255), std::nullopt, config, 25);
  for (float v : out.values) EXPECT_EQ(v, 1.0f);
}

TEST(Preprocess, LandmarkCountMustMatchFrames) {
  LandmarkTrack track;
  track.frames.resize(2);
  try {
    preprocess_recording(constant_frames(16, 16, 3, 9), track, RoiConfig{}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
}

TEST(Preprocess, DegenerateLandmarksFallBack) {
  nn::Rng rng(1);
  auto frames = constant_frames(40, 40, 2, 0);
  for (auto& f : frames.frames) {
    for (auto& b : f) b = static_cast<std::uint8_t>(rng.below(256));
  }
  LandmarkTrack track;
  track.frames.resize(2);  // all points at the origin
  RoiConfig config;
  config.output_size = 8;
  EXPECT_EQ(preprocess_recording(frames, track, config, 2),
            preprocess_recording(frames, std::nullopt, config, 2));
}

TEST(Preprocess, LandmarksSelectMouthRegion) {
  auto frames = constant_frames(64, 64, 1, 0);
  for (int y = 10; y < 20; ++y) {
    for (int x = 30; x < 40; ++x) frames.frames[0][y * 64 + x] = 255;
  }
  LandmarkTrack track;
  track.frames.resize(1);
  for (std::size_t i = 48; i <= 67; ++i) track.frames[0][i] = {34.5, 14.5};
  track.frames[0][48] = {30.0, 10.0};
  track.frames[0][54] = {39.0, 19.0};
  RoiConfig config;
  config.output_size = 8;
  config.margin_fraction = 0.0;
  const auto out = preprocess_recording(frames, track, config, 1);
  // The 9-pixel box at (30, 10) lies inside the bright patch.
  for (float v : out.values) EXPECT_EQ(v, 1.0f);
}

TEST(PreprocessProperty, PureAndBounded) {
  nn::Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    auto frames = constant_frames(static_cast<std::uint32_t>(8 + rng.below(40)),
                                  static_cast<std::uint32_t>(8 + rng.below(40)),
                                  1 + rng.below(40), 0);
    for (auto& f : frames.frames) {
      for (auto& b : f) b = static_cast<std::uint8_t>(rng.below(256));
    }
    RoiConfig config;
    config.output_size = static_cast<std::uint32_t>(8 + rng.below(25));
    const auto target = static_cast<std::uint32_t>(1 + rng.below(30));
    const auto a = preprocess_recording(frames, std::nullopt, config, target);
    const auto b = preprocess_recording(frames, std::nullopt, config, target);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.values.size(), std::size_t{target} * config.output_size * config.output_size);
    for (float v : a.values) {
      EXPECT_GE(v, 0.0f);
      EXPECT_LE(v, 1.0f);
    }
  }
}

TEST(PreprocessProperty, TemporalEndpoints) {
  for (std::size_t n = 1; n <= 80; ++n) {
    for (std::uint32_t t = 1; t <= 40; ++t) {
      const auto idx = temporal_indices(n, t);
      ASSERT_EQ(idx.size(), t);
      EXPECT_EQ(idx.front(), 0u);
      if (n > t && t > 1) {
        EXPECT_EQ(idx.back(), n - 1);
      }
      for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_GE(idx[i], idx[i - 1]);
      for (auto v : idx) EXPECT_LT(v, n);
    }
  }
}

}  // namespace
}  // namespace liplink::media
