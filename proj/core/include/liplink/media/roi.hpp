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

#include "liplink/media/landmarks.hpp"

namespace liplink::media {

struct RoiConfig {
  std::uint32_t output_size = 32;
  double margin_fraction = 0.10;
  // Inclusive landmark index interval covering the lips.
  std::uint32_t mouth_first = 48;
  std::uint32_t mouth_last = 67;

  void validate() const;
};

// Half-open pixel box [x0, x1) x [y0, y1).
struct PixelBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }

  friend bool operator==(const PixelBox&, const PixelBox&) = default;
};

// Real-valued grayscale image, row-major.
struct Image {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<float> values;

  float at(std::uint32_t x, std::uint32_t y) const { return values[std::size_t{y} * width + x]; }
};

// Tight box over the mouth points, grown by margin_fraction of each extent on
// every side, squared about its centre, then moved (and only if necessary
// shrunk) to fit inside the frame. Throws DegenerateBox when the mouth points
// have no extent.
PixelBox mouth_bounding_box(const FrameLandmarks& points, const RoiConfig& config,
                            std::uint32_t frame_width, std::uint32_t frame_height);

// Lower-face prior used when no landmarks are available: a square of side
// floor(min(w, h) / 2) centred horizontally and a quarter of the height below
// the frame centre.
PixelBox fallback_center_crop(std::uint32_t frame_width, std::uint32_t frame_height);

// Rounds a real square to pixels and clamps it inside the frame.
PixelBox place_square(double center_x, double center_y, double side, std::uint32_t frame_width,
                      std::uint32_t frame_height);

Image crop(std::span<const std::uint8_t> frame, std::uint32_t frame_width, const PixelBox& box);

// Align-corners bilinear resampling. A source dimension of size 1 maps every
// output sample onto that single row or column.
Image resize_bilinear(const Image& source, std::uint32_t out_width, std::uint32_t out_height);
inline Image resize_bilinear(const Image& source, std::uint32_t out_side) {
  return resize_bilinear(source, out_side, out_side);
}

}  // namespace liplink::media
