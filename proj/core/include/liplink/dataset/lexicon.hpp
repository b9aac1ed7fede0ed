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
#include <string>
#include <string_view>
#include <vector>

namespace liplink::dataset {

// Phrase ids are implicit: phrases[i] has id i.
struct PhraseLexicon {
  std::uint32_t version = 1;
  std::vector<std::string> phrases;

  std::uint32_t size() const { return static_cast<std::uint32_t>(phrases.size()); }
  bool contains(std::uint32_t id) const { return id < phrases.size(); }

  friend bool operator==(const PhraseLexicon&, const PhraseLexicon&) = default;
};

// Schema: {"version": u32, "phrases": [string, ...]}. Throws SchemaError or
// DuplicateText.
PhraseLexicon load_lexicon(std::string_view text);
std::string save_lexicon(const PhraseLexicon& lexicon);

// Version-1 lexicon of `count` numbered placeholder phrases.
PhraseLexicon placeholder_lexicon(std::uint32_t count = 88);

}  // namespace liplink::dataset
