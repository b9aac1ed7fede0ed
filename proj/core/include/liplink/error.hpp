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

#include <stdexcept>
#include <string>
#include <string_view>

namespace liplink {

// Failure categories shared by every module. The names double as the
// machine-readable codes reported by the CLI and the HTTP service.
enum class ErrorCode {
  kBadMagic,
  kTruncatedStream,
  kZeroDimension,
  kSchemaError,
  kWrongPointCount,
  kDegenerateBox,
  kShapeMismatch,
  kOddDimension,
  kLabelOutOfRange,
  kBadK,
  kChecksumMismatch,
  kSpecMismatch,
  kEmptySplit,
  kDuplicateText,
  kEmptyDataset,
  kBadParams,
  kLengthMismatch,
  kIoError,
  kNotFound,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace liplink
