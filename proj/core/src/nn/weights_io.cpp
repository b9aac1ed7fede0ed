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

#include "liplink/nn/weights_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <limits>

namespace liplink::nn {

using nlohmann::json;

namespace {

constexpr std::uint8_t kMagic[4] = {'L', 'W', '0', '1'};

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

std::uint32_t float_bits(float v) { return std::bit_cast<std::uint32_t>(v); }
float bits_float(std::uint32_t v) { return std::bit_cast<float>(v); }

}  // namespace

Bytes save_weights(const ModelWeights<float>& weights) {
  json tensors = json::array();
  for (const auto& [name, tensor] : weights.named()) {
    tensors.push_back({{"name", name}, {"shape", tensor->shape()}});
  }
  const std::string header = json{{"spec", to_json(weights.spec)}, {"tensors", tensors}}.dump();

  Bytes out(std::begin(kMagic), std::end(kMagic));
  put_u32_le(out, static_cast<std::uint32_t>(header.size()));
  out.insert(out.end(), header.begin(), header.end());
  out.reserve(out.size() + 4 * weights.parameter_count() + 4);
  for (const auto& [name, tensor] : weights.named()) {
    for (const float v : tensor->values()) put_u32_le(out, float_bits(v));
  }
  put_u32_le(out, crc32(out));
  return out;
}

ModelWeights<float> load_weights(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw Error(ErrorCode::kBadMagic, "not a weights stream");
  }
  if (bytes.size() < 12) throw Error(ErrorCode::kTruncatedStream, "weights stream too short");
  const std::size_t body = bytes.size() - 4;
  if (crc32(bytes.first(body)) != get_u32_le(bytes, body)) {
    throw Error(ErrorCode::kChecksumMismatch, "weights CRC32 does not match");
  }
  const std::uint32_t header_len = get_u32_le(bytes, 4);
  if (8 + std::uint64_t{header_len} > body) {
    throw Error(ErrorCode::kTruncatedStream, "weights header runs past the end of the stream");
  }
  const auto* header_begin = reinterpret_cast<const char*>(bytes.data() + 8);
  json header = json::parse(header_begin, header_begin + header_len, nullptr, false);
  if (header.is_discarded() || !header.is_object() || !header.contains("spec") ||
      !header.contains("tensors") || !header["tensors"].is_array()) {
    throw Error(ErrorCode::kSchemaError, "malformed weights header");
  }

  ModelSpec spec;
  try {
    spec = model_spec_from_json(header["spec"]);
    spec.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kSpecMismatch, std::string("invalid spec in header: ") + e.what());
  }
  const auto expected = parameter_shapes(spec);
  const json& listed = header["tensors"];
  if (listed.size() != expected.size()) {
    throw Error(ErrorCode::kSpecMismatch, "header lists " + std::to_string(listed.size()) +
                                              " tensors, spec implies " +
                                              std::to_string(expected.size()));
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const json& entry = listed[i];
    Shape shape;
    std::string name;
    try {
      name = entry.at("name").get<std::string>();
      shape = entry.at("shape").get<Shape>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kSchemaError, std::string("tensor entry: ") + e.what());
    }
    if (name != expected[i].first || shape != expected[i].second) {
      throw Error(ErrorCode::kSpecMismatch,
                  "tensor " + name + shape_to_string(shape) + " does not match spec tensor " +
                      expected[i].first + shape_to_string(expected[i].second));
    }
  }

  auto weights = ModelWeights<float>::zeros(spec);
  const std::uint64_t needed = 8 + std::uint64_t{header_len} + 4 * weights.parameter_count();
  if (needed != body) {
    throw Error(ErrorCode::kTruncatedStream, "tensor payload size disagrees with the header");
  }
  std::size_t offset = 8 + header_len;
  for (auto& [name, tensor] : weights.named()) {
    for (auto& v : tensor->values()) {
      v = bits_float(get_u32_le(bytes, offset));
      offset += 4;
    }
  }
  return weights;
}

}  // namespace liplink::nn
