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

#ifndef BIFACT_TESTS_TEST_UTIL_H_
#define BIFACT_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <string>
#include <vector>

namespace bifact::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

std::filesystem::path SourceDir();
std::filesystem::path FixtureDir();
std::filesystem::path TemplatesDir();
std::filesystem::path CliPath();

void WriteText(const std::filesystem::path& path, const std::string& text);
std::string ReadText(const std::filesystem::path& path);

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the bifact binary with `args`, capturing stdout and stderr.
CliResult RunCli(const std::vector<std::string>& args);

}  // namespace bifact::testing

#endif  // BIFACT_TESTS_TEST_UTIL_H_
