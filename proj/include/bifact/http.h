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

#ifndef BIFACT_HTTP_H_
#define BIFACT_HTTP_H_

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace bifact {

inline constexpr const char* kApiKeyEnv = "BIFACT_API_KEY";

// Credential from BIFACT_API_KEY, if set and non-empty.
std::optional<std::string> ApiKeyFromEnvironment();

// POSTs `body` as JSON and returns the response body. Transport errors and
// non-2xx statuses throw BackendUnavailable.
std::string PostJson(const std::string& url, const nlohmann::json& body,
                     std::chrono::milliseconds timeout,
                     const std::optional<std::string>& bearer_token);

// Runs `call`, retrying BackendUnavailable up to `max_retries` more times
// with exponential backoff (backoff, 2*backoff, 4*backoff, ...).
std::string WithTransportRetries(int max_retries,
                                 std::chrono::milliseconds backoff,
                                 const std::function<std::string()>& call);

// Resolves an RFC 6901 JSON pointer; throws ParseFailure when absent.
const nlohmann::json& ResolvePointer(const nlohmann::json& doc,
                                     const std::string& pointer,
                                     std::string_view raw);

}  // namespace bifact

#endif  // BIFACT_HTTP_H_
