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

#include <span>

#include "liplink/io.hpp"
#include "liplink/nn/model.hpp"

namespace liplink::nn {

// Weights container:
//   "LW01" | u32 header_length | header JSON (spec + ordered tensor list)
//   | f32 tensor data in listed order | u32 CRC32 of everything before it
// All integers and reals little-endian.
Bytes save_weights(const ModelWeights<float>& weights);

// Throws BadMagic, TruncatedStream, ChecksumMismatch, SchemaError or
// SpecMismatch (header tensors disagree with the shapes the spec implies).
ModelWeights<float> load_weights(std::span<const std::uint8_t> bytes);

}  // namespace liplink::nn
