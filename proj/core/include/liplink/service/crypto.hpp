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
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "liplink/io.hpp"

namespace liplink::service {

std::string sha256_hex(std::span<const std::uint8_t> bytes);
std::string sha256_hex(std::string_view text);

// Hex encoding of `count` bytes from the OS CSPRNG.
std::string random_hex(std::size_t count);

bool constant_time_equal(std::string_view a, std::string_view b);

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::optional<Bytes> base64_decode(std::string_view text);

// Salted, iterated password digest, "pbkdf2-sha256".
struct PasswordDigest {
  std::string algorithm = "pbkdf2-sha256";
  std::string salt_hex;
  std::uint32_t iterations = 0;
  std::string digest_hex;
};

PasswordDigest hash_password(std::string_view password, std::uint32_t iterations);
bool verify_password(std::string_view password, const PasswordDigest& record);

}  // namespace liplink::service
