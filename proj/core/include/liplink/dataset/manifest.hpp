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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "liplink/dataset/split.hpp"
#include "liplink/media/roi.hpp"
#include "liplink/nn/train.hpp"

namespace liplink::dataset {

struct ManifestEntry {
  std::filesystem::path lvf;
  std::optional<std::filesystem::path> landmarks;
  std::uint32_t phrase_id = 0;
  std::uint32_t repetition = 0;
};

// {"entries": [{"lvf": path, "landmarks": path?, "phrase_id": u32,
//               "repetition": u32}, ...]}
struct Manifest {
  std::vector<ManifestEntry> entries;
};

// Relative paths are resolved against the manifest's directory.
Manifest load_manifest(const std::filesystem::path& file);
std::string save_manifest(const Manifest& manifest);

// Decodes and preprocesses every entry, in manifest order.
std::vector<nn::LabeledSequence> load_manifest_samples(const Manifest& manifest,
                                                       const media::RoiConfig& roi,
                                                       std::uint32_t sequence_length);

// Recording id of the i-th sample in a positional dataset.
std::string positional_id(std::size_t index);

struct AssembledSplit {
  DatasetSplit split;
  nn::TrainingSet data;
};

// Stratified split of positional samples (ids from positional_id).
AssembledSplit make_training_set(const std::vector<nn::LabeledSequence>& samples, double ratio,
                                 std::uint64_t seed);

}  // namespace liplink::dataset
