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

#include <cstring>

#include <nlohmann/json.hpp>

#include "liplink/error.hpp"
#include "liplink/nn/weights_io.hpp"
#include "test_support.hpp"

namespace liplink::nn {
namespace {

ErrorCode load_error(const Bytes& bytes) {
  try {
    load_weights(bytes);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "load succeeded";
  return ErrorCode::kIoError;
}

// Replaces the JSON header and recomputes the trailing checksum.
Bytes with_header(const Bytes& stream, const nlohmann::json& header) {
  const std::uint32_t old_len = get_u32_le(stream, 4);
  const std::string text = header.dump();
  Bytes out = {'L', 'W', '0', '1'};
  put_u32_le(out, static_cast<std::uint32_t>(text.size()));
  out.insert(out.end(), text.begin(), text.end());
  out.insert(out.end(), stream.begin() + 8 + old_len, stream.end() - 4);
  put_u32_le(out, crc32(out));
  return out;
}

nlohmann::json header_of(const Bytes& stream) {
  const std::uint32_t len = get_u32_le(stream, 4);
  return nlohmann::json::parse(stream.begin() + 8, stream.begin() + 8 + len);
}

TEST(WeightsIo, RoundTripIsBitExact) {
  const auto w = initialize_weights<float>(testing::tiny_spec(), 3);
  const Bytes bytes = save_weights(w);
  EXPECT_EQ(std::memcmp(bytes.data(), "LW01", 4), 0);
  const auto loaded = load_weights(bytes);
  EXPECT_EQ(loaded, w);
  EXPECT_EQ(save_weights(loaded), bytes);
}

TEST(WeightsIo, LayoutMatchesFormat) {
  const auto w = initialize_weights<float>(testing::tiny_spec(), 4);
  const Bytes bytes = save_weights(w);
  const auto header = header_of(bytes);
  EXPECT_EQ(header.at("tensors").size(), 11u);
  EXPECT_EQ(header.at("tensors")[0].at("name"), "conv0.kernel");
  const std::size_t payload = bytes.size() - 8 - get_u32_le(bytes, 4) - 4;
  EXPECT_EQ(payload, w.parameter_count() * 4);
  EXPECT_EQ(get_u32_le(bytes, bytes.size() - 4),
            crc32(std::span<const std::uint8_t>(bytes.data(), bytes.size() - 4)));
  float first = 0;
  std::memcpy(&first, bytes.data() + 8 + get_u32_le(bytes, 4), 4);
  EXPECT_EQ(first, w.conv_kernels[0][0]);
}

TEST(WeightsIo, TruncationDetected) {
  const Bytes bytes = save_weights(initialize_weights<float>(testing::tiny_spec(), 5));
  for (std::size_t cut : {std::size_t{0}, std::size_t{3}, std::size_t{9}, bytes.size() / 2,
                          bytes.size() - 1}) {
    const Bytes truncated(bytes.begin(), bytes.begin() + cut);
    const auto code = load_error(truncated);
    EXPECT_TRUE(code == ErrorCode::kChecksumMismatch || code == ErrorCode::kTruncatedStream ||
                code == ErrorCode::kBadMagic)
        << to_string(code);
  }
}

TEST(WeightsIo, CorruptionDetected) {
  Bytes bytes = save_weights(initialize_weights<float>(testing::tiny_spec(), 6));
  bytes[bytes.size() / 2] ^= 0x10;
  EXPECT_EQ(load_error(bytes), ErrorCode::kChecksumMismatch);
  bytes = save_weights(initialize_weights<float>(testing::tiny_spec(), 6));
  bytes[0] = 'X';
  EXPECT_EQ(load_error(bytes), ErrorCode::kBadMagic);
}

TEST(WeightsIo, EditedSpecFieldIsSpecMismatch) {
  const Bytes bytes = save_weights(initialize_weights<float>(testing::tiny_spec(), 7));
  auto header = header_of(bytes);
  header["spec"]["lstm_hidden"] = 5;
  EXPECT_EQ(load_error(with_header(bytes, header)), ErrorCode::kSpecMismatch);
  header = header_of(bytes);
  header["tensors"][1]["shape"] = {3};
  EXPECT_EQ(load_error(with_header(bytes, header)), ErrorCode::kSpecMismatch);
  header = header_of(bytes);
  header["spec"]["num_classes"] = 1;
  EXPECT_EQ(load_error(with_header(bytes, header)), ErrorCode::kSpecMismatch);
}

}  // namespace
}  // namespace liplink::nn
