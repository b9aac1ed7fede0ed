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

#include "liplink/media/roi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liplink/error.hpp"

namespace liplink::media {

void RoiConfig::validate() const {
  if (output_size < 8) throw Error(ErrorCode::kBadParams, "output_size must be at least 8");
  if (!(margin_fraction >= 0.0 && margin_fraction < 1.0)) {
    throw Error(ErrorCode::kBadParams, "margin_fraction must lie in [0, 1)");
  }
  if (mouth_first > mouth_last || mouth_last >= kLandmarkCount) {
    throw Error(ErrorCode::kBadParams, "mouth landmark interval must lie within [0, 67]");
  }
}

PixelBox place_square(double center_x, double center_y, double side, std::uint32_t frame_width,
                      std::uint32_t frame_height) {
  const int limit = static_cast<int>(std::min(frame_width, frame_height));
  int side_px = static_cast<int>(std::lround(side));
  side_px = std::clamp(side_px, 1, limit);
  int x0 = static_cast<int>(std::lround(center_x - side_px / 2.0));
  int y0 = static_cast<int>(std::lround(center_y - side_px / 2.0));
  x0 = std::clamp(x0, 0, static_cast<int>(frame_width) - side_px);
  y0 = std::clamp(y0, 0, static_cast<int>(frame_height) - side_px);
  return {x0, y0, x0 + side_px, y0 + side_px};
}

PixelBox mouth_bounding_box(const FrameLandmarks& points, const RoiConfig& config,
                            std::uint32_t frame_width, std::uint32_t frame_height) {
  config.validate();
  if (frame_width == 0 || frame_height == 0) {
    throw Error(ErrorCode::kZeroDimension, "frame has a zero dimension");
  }
  double min_x = points[config.mouth_first].x, max_x = min_x;
  double min_y = points[config.mouth_first].y, max_y = min_y;
  for (std::uint32_t i = config.mouth_first + 1; i <= config.mouth_last; ++i) {
    min_x = std::min(min_x, points[i].x);
    max_x = std::max(max_x, points[i].x);
    min_y = std::min(min_y, points[i].y);
    max_y = std::max(max_y, points[i].y);
  }
  const double extent_x = max_x - min_x;
  const double extent_y = max_y - min_y;
  const double side = std::max(extent_x, extent_y) * (1.0 + 2.0 * config.margin_fraction);
  if (!(side >= 0.5)) {
    throw Error(ErrorCode::kDegenerateBox, "mouth landmarks have no spatial extent");
  }
  return place_square((min_x + max_x) / 2.0, (min_y + max_y) / 2.0, side, frame_width,
                      frame_height);
}

PixelBox fallback_center_crop(std::uint32_t frame_width, std::uint32_t frame_height) {
  if (frame_width == 0 || frame_height == 0) {
    throw Error(ErrorCode::kZeroDimension, "frame has a zero dimension");
  }
  const auto side = std::max<std::uint32_t>(1, std::min(frame_width, frame_height) / 2);
  return place_square(frame_width / 2.0, frame_height / 2.0 + 0.25 * frame_height, side,
                      frame_width, frame_height);
}

Image crop(std::span<const std::uint8_t> frame, std::uint32_t frame_width, const PixelBox& box) {
  Image out;
  out.width = static_cast<std::uint32_t>(box.width());
  out.height = static_cast<std::uint32_t>(box.height());
  out.values.resize(std::size_t{out.width} * out.height);
  for (int y = box.y0; y < box.y1; ++y) {
    const auto* row = frame.data() + static_cast<std::size_t>(y) * frame_width;
    auto* dst = out.values.data() + static_cast<std::size_t>(y - box.y0) * out.width;
    for (int x = box.x0; x < box.x1; ++x) dst[x - box.x0] = static_cast<float>(row[x]);
  }
  return out;
}

namespace {

struct Tap {
  std::uint32_t lo;
  std::uint32_t hi;
  double t;
};

std::vector<Tap> sample_positions(std::uint32_t in, std::uint32_t out) {
  std::vector<Tap> taps(out);
  for (std::uint32_t i = 0; i < out; ++i) {
    if (in == 1 || out == 1) {
      taps[i] = {0, 0, 0.0};
      continue;
    }
    const double pos = static_cast<double>(i) * (in - 1) / (out - 1);
    auto lo = static_cast<std::uint32_t>(std::floor(pos));
    lo = std::min(lo, in - 1);
    const std::uint32_t hi = std::min(lo + 1, in - 1);
    taps[i] = {lo, hi, pos - lo};
  }
  return taps;
}

// Stays within [min(a, b), max(a, b)] and returns a exactly when a == b.
double lerp(double a, double b, double t) {
  const double v = a + (b - a) * t;
  return std::clamp(v, std::min(a, b), std::max(a, b));
}

}  // namespace

Image resize_bilinear(const Image& source, std::uint32_t out_width, std::uint32_t out_height) {
  if (source.width == 0 || source.height == 0) {
    throw Error(ErrorCode::kZeroDimension, "cannot resize an empty image");
  }
  if (out_width == 0 || out_height == 0) {
    throw Error(ErrorCode::kZeroDimension, "resize target has a zero dimension");
  }
  const auto xs = sample_positions(source.width, out_width);
  const auto ys = sample_positions(source.height, out_height);
  Image out;
  out.width = out_width;
  out.height = out_height;
  out.values.resize(std::size_t{out_width} * out_height);
  for (std::uint32_t oy = 0; oy < out_height; ++oy) {
    const Tap& ty = ys[oy];
    for (std::uint32_t ox = 0; ox < out_width; ++ox) {
      const Tap& tx = xs[ox];
      const double top = lerp(source.at(tx.lo, ty.lo), source.at(tx.hi, ty.lo), tx.t);
      const double bottom = lerp(source.at(tx.lo, ty.hi), source.at(tx.hi, ty.hi), tx.t);
      out.values[std::size_t{oy} * out_width + ox] = static_cast<float>(lerp(top, bottom, ty.t));
    }
  }
  return out;
}

}  // namespace liplink::media
