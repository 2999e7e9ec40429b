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

#ifndef BIFACT_CACHE_H_
#define BIFACT_CACHE_H_

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace bifact {

struct CacheEntry {
  std::string key;
  std::string value;
  std::filesystem::file_time_type created_at;
};

// Content-addressed store of raw judge responses: one file per entry, named
// by the hex SHA-256 of (backend kind, model name, rendered prompt), holding
// the response verbatim. Writers go through temp-then-rename, so concurrent
// writers of the same key are safe. I/O problems are reported as warnings
// and never propagate.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  static std::string Key(std::string_view backend_kind,
                         std::string_view model_name,
                         std::string_view rendered_prompt);

  // Unreadable or empty entries count as misses.
  std::optional<CacheEntry> Get(const std::string& key) const;
  void Put(const std::string& key, std::string_view value) const;
  void Erase(const std::string& key) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path PathFor(const std::string& key) const;

  std::filesystem::path dir_;
};

}  // namespace bifact

#endif  // BIFACT_CACHE_H_
