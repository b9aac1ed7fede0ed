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

#include <set>

#include "liplink/nn/rng.hpp"
#include "liplink/service/crypto.hpp"

namespace liplink::service {
namespace {

TEST(Crypto, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(std::string_view("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex(std::string_view("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Crypto, RandomHexIsFreshAndSized) {
  std::set<std::string> seen;
  for (int i = 0; i < 50; ++i) {
    const auto token = random_hex(16);
    EXPECT_EQ(token.size(), 32u);
    EXPECT_TRUE(seen.insert(token).second);
  }
}

TEST(Crypto, ConstantTimeEqual) {
  EXPECT_TRUE(constant_time_equal("abc", "abc"));
  EXPECT_FALSE(constant_time_equal("abc", "abd"));
  EXPECT_FALSE(constant_time_equal("abc", "abcd"));
}

TEST(Crypto, Base64Examples) {
  const std::string text = "foobar";
  const Bytes bytes(text.begin(), text.end());
  EXPECT_EQ(base64_encode(bytes), "Zm9vYmFy");
  EXPECT_EQ(base64_encode(std::span<const std::uint8_t>(bytes.data(), 4)), "Zm9vYg==");
  EXPECT_FALSE(base64_decode("Zm9v!mFy").has_value());
}

TEST(CryptoProperty, Base64RoundTrip) {
  nn::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Bytes blob(rng.below(70));
    for (auto& b : blob) b = static_cast<std::uint8_t>(rng.below(256));
    const auto decoded = base64_decode(base64_encode(blob));
    ASSERT_TRUE(decoded.has_value());
    EXPECT_EQ(*decoded, blob);
  }
}

TEST(Crypto, PasswordDigestVerifies) {
  const auto record = hash_password("correct horse", 1000);
  EXPECT_EQ(record.algorithm, "pbkdf2-sha256");
  EXPECT_EQ(record.iterations, 1000u);
  EXPECT_FALSE(record.salt_hex.empty());
  EXPECT_TRUE(verify_password("correct horse", record));
  EXPECT_FALSE(verify_password("correct horsf", record));
  const auto again = hash_password("correct horse", 1000);
  EXPECT_NE(again.salt_hex, record.salt_hex);
  EXPECT_NE(again.digest_hex, record.digest_hex);
}

}  // namespace
}  // namespace liplink::service
