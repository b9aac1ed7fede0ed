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

#include "liplink/dataset/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "liplink/error.hpp"
#include "liplink/nn/rng.hpp"

namespace liplink::dataset {

DatasetSplit split_train_val(std::span<const SplitItem> recordings, double ratio,
                             std::uint64_t seed) {
  if (recordings.empty()) throw Error(ErrorCode::kEmptyDataset, "no recordings to split");
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error(ErrorCode::kBadParams, "ratio must lie in (0, 1)");

  std::map<std::uint32_t, std::vector<std::string>> by_phrase;
  for (const auto& item : recordings) by_phrase[item.phrase_id].push_back(item.recording_id);

  DatasetSplit split;
  split.seed = seed;
  for (auto& [phrase, ids] : by_phrase) {
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
      throw Error(ErrorCode::kBadParams, "duplicate recording id in phrase " + std::to_string(phrase));
    }
    nn::Rng rng(nn::mix_seed(seed, 0x73706c6974, phrase));  // "split"
    rng.shuffle(std::span<std::string>(ids));
    const std::size_t count = ids.size();
    auto n_train = static_cast<std::size_t>(std::lround(ratio * static_cast<double>(count)));
    if (count >= 2) n_train = std::clamp<std::size_t>(n_train, 1, count - 1);
    else n_train = count;
    split.train.insert(split.train.end(), ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.validation.insert(split.validation.end(), ids.begin() + static_cast<std::ptrdiff_t>(n_train), ids.end());
  }
  split.validation_empty = split.validation.empty();
  return split;
}

}  // namespace liplink::dataset
