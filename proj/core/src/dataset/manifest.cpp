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

#include "liplink/dataset/manifest.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "liplink/error.hpp"
#include "liplink/io.hpp"
#include "liplink/media/landmarks.hpp"
#include "liplink/media/lvf.hpp"
#include "liplink/media/preprocess.hpp"

namespace liplink::dataset {

using nlohmann::json;

Manifest load_manifest(const std::filesystem::path& file) {
  const json doc = json::parse(read_text_file(file), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("entries") ||
      !doc["entries"].is_array()) {
    throw Error(ErrorCode::kSchemaError, file.string() + " is not a manifest");
  }
  const auto base = file.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
  };
  Manifest manifest;
  for (const auto& e : doc["entries"]) {
    try {
      ManifestEntry entry;
      entry.lvf = resolve(e.at("lvf").get<std::string>());
      if (e.contains("landmarks") && !e["landmarks"].is_null()) {
        entry.landmarks = resolve(e["landmarks"].get<std::string>());
      }
      entry.phrase_id = e.at("phrase_id").get<std::uint32_t>();
      entry.repetition = e.value("repetition", 0u);
      manifest.entries.push_back(std::move(entry));
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::kSchemaError, "manifest entry: " + std::string(ex.what()));
    }
  }
  return manifest;
}

std::string save_manifest(const Manifest& manifest) {
  json entries = json::array();
  for (const auto& e : manifest.entries) {
    json entry = {{"lvf", e.lvf.generic_string()},
                  {"phrase_id", e.phrase_id},
                  {"repetition", e.repetition}};
    if (e.landmarks) entry["landmarks"] = e.landmarks->generic_string();
    entries.push_back(std::move(entry));
  }
  return json{{"entries", std::move(entries)}}.dump(2) + "\n";
}

std::vector<nn::LabeledSequence> load_manifest_samples(const Manifest& manifest,
                                                       const media::RoiConfig& roi,
                                                       std::uint32_t sequence_length) {
  std::vector<nn::LabeledSequence> samples;
  samples.reserve(manifest.entries.size());
  for (const auto& entry : manifest.entries) {
    const auto frames = media::decode_lvf(read_file(entry.lvf));
    std::optional<media::LandmarkTrack> landmarks;
    if (entry.landmarks) landmarks = media::parse_landmarks(read_text_file(*entry.landmarks));
    samples.push_back(
        {media::preprocess_recording(frames, landmarks, roi, sequence_length), entry.phrase_id});
  }
  return samples;
}

std::string positional_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08zu", index);
  return buf;
}

AssembledSplit make_training_set(const std::vector<nn::LabeledSequence>& samples, double ratio,
                                 std::uint64_t seed) {
  std::vector<SplitItem> items;
  items.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    items.push_back({positional_id(i), samples[i].label});
  }
  AssembledSplit out;
  out.split = split_train_val(items, ratio, seed);
  for (const auto& id : out.split.train) out.data.train.push_back(samples[std::stoul(id)]);
  for (const auto& id : out.split.validation) {
    out.data.validation.push_back(samples[std::stoul(id)]);
  }
  return out;
}

}  // namespace liplink::dataset
