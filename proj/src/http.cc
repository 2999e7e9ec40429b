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

#include "bifact/http.h"

#include <cstdlib>
#include <thread>

#include "bifact/error.h"
#include "bifact/io.h"
#include "httplib.h"

namespace bifact {
namespace {

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

ParsedUrl SplitUrl(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kConfigError, "endpoint '" + url + "' lacks scheme");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

std::optional<std::string> ApiKeyFromEnvironment() {
  const char* value = std::getenv(kApiKeyEnv);
  if (value == nullptr || *value == '\0') return std::nullopt;
  return std::string(value);
}

std::string PostJson(const std::string& url, const nlohmann::json& body,
                     std::chrono::milliseconds timeout,
                     const std::optional<std::string>& bearer_token) {
  const ParsedUrl parsed = SplitUrl(url);
  httplib::Client client(parsed.origin);
  const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers;
  if (bearer_token) headers.emplace("Authorization", "Bearer " + *bearer_token);
  auto result = client.Post(parsed.path, headers, body.dump(), "application/json");
  if (!result) {
    throw Error(ErrorCode::kBackendUnavailable,
                "POST " + url + " failed: " + httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    throw Error(ErrorCode::kBackendUnavailable,
                "POST " + url + " returned HTTP " +
                    std::to_string(result->status),
                result->body);
  }
  return result->body;
}

std::string WithTransportRetries(int max_retries,
                                 std::chrono::milliseconds backoff,
                                 const std::function<std::string()>& call) {
  for (int attempt = 0;; ++attempt) {
    try {
      return call();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBackendUnavailable || attempt >= max_retries) {
        throw;
      }
      LogWarning(std::string(e.what()) + "; retrying");
      std::this_thread::sleep_for(backoff * (1LL << attempt));
    }
  }
}

const nlohmann::json& ResolvePointer(const nlohmann::json& doc,
                                     const std::string& pointer,
                                     std::string_view raw) {
  try {
    const nlohmann::json::json_pointer ptr(pointer);
    if (!doc.contains(ptr)) {
      throw Error(ErrorCode::kParseFailure,
                  "response lacks '" + pointer + "'", std::string(raw));
    }
    return doc.at(ptr);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseFailure,
                "bad response path '" + pointer + "': " + e.what(),
                std::string(raw));
  }
}

}  // namespace bifact
