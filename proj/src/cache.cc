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

#include "bifact/cache.h"

#include "bifact/error.h"
#include "bifact/io.h"

namespace bifact {

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    LogWarning("cache directory " + dir_.string() +
               " unavailable: " + ec.message());
  }
}

std::string ResponseCache::Key(std::string_view backend_kind,
                               std::string_view model_name,
                               std::string_view rendered_prompt) {
  // Length-prefix the fields so no two distinct triples share a preimage.
  std::string material;
  for (std::string_view field : {backend_kind, model_name, rendered_prompt}) {
    material += std::to_string(field.size());
    material += ':';
    material += field;
  }
  return Sha256Hex(material);
}

std::filesystem::path ResponseCache::PathFor(const std::string& key) const {
  return dir_ / key;
}

std::optional<CacheEntry> ResponseCache::Get(const std::string& key) const {
  const auto path = PathFor(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return std::nullopt;
  try {
    CacheEntry entry{key, ReadFile(path), {}};
    entry.created_at = std::filesystem::last_write_time(path, ec);
    if (entry.value.empty()) {
      LogWarning("ignoring empty cache entry " + key);
      return std::nullopt;
    }
    return entry;
  } catch (const Error& e) {
    LogWarning(std::string("CacheIOFailure: ") + e.what());
    return std::nullopt;
  }
}

void ResponseCache::Put(const std::string& key, std::string_view value) const {
  try {
    WriteFileAtomic(PathFor(key), value);
  } catch (const Error& e) {
    LogWarning(std::string("CacheIOFailure: ") + e.what());
  }
}

void ResponseCache::Erase(const std::string& key) const {
  std::error_code ec;
  std::filesystem::remove(PathFor(key), ec);
  if (ec) LogWarning("CacheIOFailure: cannot remove " + key);
}

}  // namespace bifact
