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

#ifndef BIFACT_ERROR_H_
#define BIFACT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace bifact {

enum class ErrorCode {
  kEmptyFactList,
  kOutOfRange,
  kLabelMismatch,
  kBackendUnavailable,
  kParseFailure,
  kEmptyFactorization,
  kCacheIOFailure,
  kTemplateError,
  kEmptyReference,
  kZeroVector,
  kMissingLabel,
  kDegenerateLabels,
  kEmptyInput,
  kDuplicatePair,
  kDegenerateMarginals,
  kConstantSeries,
  kLengthMismatch,
  kInputParseError,
  kDuplicateKey,
  kValidationError,
  kIOError,
  kRefusedOverwrite,
  kMissingGoldFacts,
  kMissingThreshold,
  kConfigError,
  kUsage,
};

std::string_view ErrorCodeName(ErrorCode code);

// True for errors caused by bad inputs or a violated contract (CLI exit 2),
// false for runtime failures such as an unreachable backend (CLI exit 1).
bool IsContractViolation(ErrorCode code);

// Single exception type for the library. `detail` carries auxiliary context
// such as the raw judge response that failed to parse.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string detail = {});

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace bifact

#endif  // BIFACT_ERROR_H_
