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

#include "bifact/text.h"

#include <gtest/gtest.h>

#include <random>

namespace bifact {
namespace {

using Tokens = std::vector<std::string>;

TEST(TokenizeTest, LowercasesAndSplitsOnPunctuation) {
  EXPECT_EQ(Tokenize("Book a flight, to PARIS!").tokens(),
            (Tokens{"book", "a", "flight", "to", "paris"}));
  EXPECT_EQ(Tokenize("price < 100 euros; 2-day").tokens(),
            (Tokens{"price", "100", "euros", "2", "day"}));
  EXPECT_TRUE(Tokenize("  ;;; ").empty());
  EXPECT_TRUE(Tokenize("").empty());
}

TEST(TokenizeTest, ApostrophesJoinWords) {
  EXPECT_EQ(Tokenize("don't stop").tokens(), (Tokens{"dont", "stop"}));
  EXPECT_EQ(Tokenize("Luigi's").tokens(), (Tokens{"luigis"}));
  EXPECT_EQ(Tokenize("'quoted'").tokens(), (Tokens{"quoted"}));
}

TEST(TokenizeTest, NonAsciiLetters) {
  EXPECT_EQ(Tokenize("Café MÜNCHEN").tokens(), (Tokens{"café", "münchen"}));
  EXPECT_EQ(Tokenize("ΑΘΗΝΑ Москва").tokens(), (Tokens{"αθηνα", "москва"}));
  // Invalid bytes separate words instead of failing.
  EXPECT_EQ(Tokenize("ab\xff" "cd").tokens(), (Tokens{"ab", "cd"}));
  EXPECT_EQ(Tokenize("ab\xc3").tokens(), (Tokens{"ab"}));
}

TEST(TokenizeTest, Deterministic) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 40);
    for (int k = 0; k < len; ++k) s.push_back(static_cast<char>(rng() % 256));
    const TokenSequence a = Tokenize(s);
    ASSERT_EQ(a, Tokenize(s));
    for (const auto& t : a.tokens()) ASSERT_FALSE(t.empty());
  }
}

TEST(ContainmentTest, MultisetSemantics) {
  EXPECT_TRUE(TokenMultisetContains(Tokenize("book a flight to Paris"),
                                    Tokenize("Flight to paris")));
  EXPECT_FALSE(TokenMultisetContains(Tokenize("a flight"),
                                     Tokenize("a a flight")));
  EXPECT_TRUE(TokenMultisetContains(Tokenize("a a flight"),
                                    Tokenize("a flight a")));
  EXPECT_TRUE(TokenMultisetContains(Tokenize("x"), Tokenize("")));
  EXPECT_FALSE(TokenMultisetContains(Tokenize(""), Tokenize("x")));
}

}  // namespace
}  // namespace bifact
