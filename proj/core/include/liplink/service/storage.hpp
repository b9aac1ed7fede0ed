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

#include <filesystem>
#include <string>
#include <string_view>

#include "liplink/io.hpp"

namespace liplink::service {

// Content-addressed blob store; a reference is the SHA-256 hex digest of the
// blob.
class BlobStore {
 public:
  virtual ~BlobStore() = default;

  virtual std::string put(std::span<const std::uint8_t> blob) = 0;
  // Throws NotFound.
  virtual Bytes get(std::string_view ref) const = 0;
  virtual bool exists(std::string_view ref) const = 0;
};

class LocalBlobStore final : public BlobStore {
 public:
  explicit LocalBlobStore(std::filesystem::path root);

  std::string put(std::span<const std::uint8_t> blob) override;
  Bytes get(std::string_view ref) const override;
  bool exists(std::string_view ref) const override;

 private:
  std::filesystem::path path_for(std::string_view ref) const;

  std::filesystem::path root_;
};

}  // namespace liplink::service
