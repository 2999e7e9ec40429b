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

#ifndef BIFACT_TEXT_H_
#define BIFACT_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace bifact {

// Ordered, normalized tokens. Only produced by Tokenize() so every lexical
// metric sees the same segmentation.
class TokenSequence {
 public:
  TokenSequence() = default;

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;

 private:
  friend TokenSequence Tokenize(std::string_view text);
  explicit TokenSequence(std::vector<std::string> tokens)
      : tokens_(std::move(tokens)) {}

  std::vector<std::string> tokens_;
};

// UTF-8 word segmentation: letters and digits (including non-ASCII letters)
// form words, punctuation and whitespace separate them, apostrophes inside a
// word are dropped ("don't" -> "dont"). Output is lowercased for ASCII,
// Latin-1, Latin Extended-A, Greek and Cyrillic. Invalid UTF-8 bytes are
// treated as separators.
TokenSequence Tokenize(std::string_view text);

// True when every token of `hypothesis` occurs in `premise` at least as many
// times (multiset containment).
bool TokenMultisetContains(const TokenSequence& premise,
                           const TokenSequence& hypothesis);

}  // namespace bifact

#endif  // BIFACT_TEXT_H_
