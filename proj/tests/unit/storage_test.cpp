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
#include "liplink/nn/rng.hpp"
#include "liplink/service/crypto.hpp"
#include "liplink/service/storage.hpp"
#include "test_support.hpp"

namespace liplink::service {
namespace {

TEST(BlobStore, RefIsContentDigest) {
  testing::TempDir dir;
  LocalBlobStore store(dir.path());
  const Bytes blob = {1, 2, 3};
  const auto ref = store.put(blob);
  EXPECT_EQ(ref, sha256_hex(blob));
  EXPECT_EQ(store.put(blob), ref);
  EXPECT_TRUE(store.exists(ref));
  EXPECT_EQ(store.get(ref), blob);
}

TEST(BlobStore, MissingRefIsNotFound) {
  testing::TempDir dir;
  LocalBlobStore store(dir.path());
  const std::string ref(64, 'a');
  EXPECT_FALSE(store.exists(ref));
  try {
    store.get(ref);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
}

TEST(BlobStore, SurvivesReopen) {
  testing::TempDir dir;
  const Bytes blob = {9, 8, 7, 6};
  std::string ref;
  {
    LocalBlobStore store(dir.path());
    ref = store.put(blob);
  }
  LocalBlobStore reopened(dir.path());
  EXPECT_EQ(reopened.get(ref), blob);
}

TEST(BlobStoreProperty, GetOfPutIsIdentity) {
  testing::TempDir dir;
  LocalBlobStore store(dir.path());
  nn::Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    Bytes blob(rng.below(300));
    for (auto& b : blob) b = static_cast<std::uint8_t>(rng.below(256));
    EXPECT_EQ(store.get(store.put(blob)), blob);
  }
}

}  // namespace
}  // namespace liplink::service
