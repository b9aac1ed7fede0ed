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

#include "liplink/error.hpp"

namespace liplink {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadMagic: return "BadMagic";
    case ErrorCode::kTruncatedStream: return "TruncatedStream";
    case ErrorCode::kZeroDimension: return "ZeroDimension";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kWrongPointCount: return "WrongPointCount";
    case ErrorCode::kDegenerateBox: return "DegenerateBox";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kOddDimension: return "OddDimension";
    case ErrorCode::kLabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kSpecMismatch: return "SpecMismatch";
    case ErrorCode::kEmptySplit: return "EmptySplit";
    case ErrorCode::kDuplicateText: return "DuplicateText";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNotFound: return "NotFound";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace liplink
