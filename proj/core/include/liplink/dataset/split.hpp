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
#include <string>
#include <vector>

namespace liplink::dataset {

struct SplitItem {
  std::string recording_id;
  std::uint32_t phrase_id = 0;
};

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::uint64_t seed = 0;
  // Set when the validation side came out empty (every phrase had a single
  // recording).
  bool validation_empty = false;

  friend bool operator==(const DatasetSplit&, const DatasetSplit&) = default;
};

// Stratified split. Each phrase's recordings are ordered by id, shuffled with
// a generator seeded from (seed, phrase_id), and round(ratio * count) of them
// go to train; phrases with >= 2 recordings keep at least one on each side.
// Result lists are grouped by ascending phrase id.
DatasetSplit split_train_val(std::span<const SplitItem> recordings, double ratio,
                             std::uint64_t seed);

}  // namespace liplink::dataset
