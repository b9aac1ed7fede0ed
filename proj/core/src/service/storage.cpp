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

#include "liplink/service/storage.hpp"

#include <algorithm>

#include "liplink/error.hpp"
#include "liplink/service/crypto.hpp"

namespace liplink::service {

namespace {
bool valid_ref(std::string_view ref) {
  return ref.size() == 64 && std::all_of(ref.begin(), ref.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}
}  // namespace

LocalBlobStore::LocalBlobStore(std::filesystem::path root) : root_(std::move(root)) {
  std::filesystem::create_directories(root_);
}

std::filesystem::path LocalBlobStore::path_for(std::string_view ref) const {
  return root_ / std::string(ref.substr(0, 2)) / std::string(ref);
}

std::string LocalBlobStore::put(std::span<const std::uint8_t> blob) {
  const std::string ref = sha256_hex(blob);
  const auto path = path_for(ref);
  if (!std::filesystem::exists(path)) {
    std::filesystem::create_directories(path.parent_path());
    write_file_atomic(path, blob);
  }
  return ref;
}

Bytes LocalBlobStore::get(std::string_view ref) const {
  if (!exists(ref)) throw Error(ErrorCode::kNotFound, "no blob " + std::string(ref));
  return read_file(path_for(ref));
}

bool LocalBlobStore::exists(std::string_view ref) const {
  return valid_ref(ref) && std::filesystem::exists(path_for(ref));
}

}  // namespace liplink::service
