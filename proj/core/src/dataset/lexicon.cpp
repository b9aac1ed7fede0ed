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

#include "liplink/dataset/lexicon.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "liplink/error.hpp"

namespace liplink::dataset {

using nlohmann::json;

PhraseLexicon load_lexicon(std::string_view text) {
  const json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::kSchemaError, "lexicon is not a JSON object");
  }
  const auto version = doc.find("version");
  const auto phrases = doc.find("phrases");
  if (version == doc.end() || !version->is_number_unsigned()) {
    throw Error(ErrorCode::kSchemaError, "lexicon needs an unsigned integer \"version\"");
  }
  if (phrases == doc.end() || !phrases->is_array()) {
    throw Error(ErrorCode::kSchemaError, "lexicon needs a \"phrases\" list");
  }
  PhraseLexicon lexicon;
  lexicon.version = version->get<std::uint32_t>();
  std::set<std::string> seen;
  for (const auto& entry : *phrases) {
    if (!entry.is_string() || entry.get_ref<const std::string&>().empty()) {
      throw Error(ErrorCode::kSchemaError, "phrases must be nonempty strings");
    }
    const auto& phrase = entry.get_ref<const std::string&>();
    if (!seen.insert(phrase).second) {
      throw Error(ErrorCode::kDuplicateText, "phrase \"" + phrase + "\" appears twice");
    }
    lexicon.phrases.push_back(phrase);
  }
  return lexicon;
}

std::string save_lexicon(const PhraseLexicon& lexicon) {
  return json{{"version", lexicon.version}, {"phrases", lexicon.phrases}}.dump(2) + "\n";
}

PhraseLexicon placeholder_lexicon(std::uint32_t count) {
  PhraseLexicon lexicon;
  lexicon.version = 1;
  for (std::uint32_t i = 0; i < count; ++i) {
    lexicon.phrases.push_back("Placeholder phrase " + std::to_string(i + 1));
  }
  return lexicon;
}

}  // namespace liplink::dataset
