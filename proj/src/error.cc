// Copyright 2026 The bifact Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bifact/error.h"

namespace bifact {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyFactList: return "EmptyFactList";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kLabelMismatch: return "LabelMismatch";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kEmptyFactorization: return "EmptyFactorization";
    case ErrorCode::kCacheIOFailure: return "CacheIOFailure";
    case ErrorCode::kTemplateError: return "TemplateError";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kMissingLabel: return "MissingLabel";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kDuplicatePair: return "DuplicatePair";
    case ErrorCode::kDegenerateMarginals: return "DegenerateMarginals";
    case ErrorCode::kConstantSeries: return "ConstantSeries";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInputParseError: return "ParseError";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kIOError: return "IOError";
    case ErrorCode::kRefusedOverwrite: return "RefusedOverwrite";
    case ErrorCode::kMissingGoldFacts: return "MissingGoldFacts";
    case ErrorCode::kMissingThreshold: return "MissingThreshold";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kUsage: return "Usage";
  }
  return "Unknown";
}

bool IsContractViolation(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBackendUnavailable:
    case ErrorCode::kParseFailure:
    case ErrorCode::kEmptyFactorization:
    case ErrorCode::kCacheIOFailure:
    case ErrorCode::kLabelMismatch:
    case ErrorCode::kIOError:
    case ErrorCode::kZeroVector:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorCode code, const std::string& message, std::string detail)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace bifact
