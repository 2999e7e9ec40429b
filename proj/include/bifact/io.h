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

#ifndef BIFACT_IO_H_
#define BIFACT_IO_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace bifact {

// Throws IOError.
std::string ReadFile(const std::filesystem::path& path);

// Writes to a uniquely named sibling temporary and renames it over `path`,
// so readers never observe a partial file. Throws IOError.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

std::array<std::uint8_t, 32> Sha256(std::string_view data);
std::string Sha256Hex(std::string_view data);

// Thread-safe line to stderr.
void LogWarning(std::string_view message);
void LogInfo(std::string_view message);

}  // namespace bifact

#endif  // BIFACT_IO_H_
