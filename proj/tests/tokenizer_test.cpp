// Copyright 2026 The codemeta Authors.
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

#include "codemeta/tokenizer.hpp"

#include <gtest/gtest.h>

#include "generators.hpp"
#include "tokenizer_corpus.hpp"

namespace codemeta {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenizer, CamelCaseIntoWords) { EXPECT_EQ(tokenize("getCarType"), (Tokens{"get", "car", "type"})); }

TEST(Tokenizer, SingleLowercaseWordIsFixedPoint) { EXPECT_EQ(tokenize("car"), (Tokens{"car"})); }

TEST(Tokenizer, AcronymAndDigitRun) {
  EXPECT_EQ(tokenize("parseXMLFile2"), (Tokens{"parse", "xml", "file", "2"}));
}

TEST(Tokenizer, UnderscoreSeparated) { EXPECT_EQ(tokenize("service_vehicle"), (Tokens{"service", "vehicle"})); }

TEST(Tokenizer, HandDerivedCorpus) {
  for (const auto& [input, expected] : test::kTokenizerCorpus) {
    EXPECT_EQ(tokenize(input), expected) << input;
  }
}

TEST(Tokenizer, FlatLowercaseIsNotSplit) { EXPECT_EQ(tokenize("getcartype"), (Tokens{"getcartype"})); }

TEST(Tokenizer, OnlyUnderscoresYieldsNoTokens) { EXPECT_TRUE(tokenize("___").empty()); }

TEST(Tokenizer, RejectsEmptyAndForeignCharacters) {
  for (std::string bad : {"", "get-car", "get car", "caf\xc3\xa9", "a.b", "$x"}) {
    try {
      tokenize(bad);
      FAIL() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidIdentifier) << bad;
    }
  }
}

TEST(TokenizerProperty, LosslessModuloCaseAndSeparators) {
  gen::Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::string id = gen::identifier(rng);
    const auto tokens = tokenize(id);
    std::string expected;
    for (char c : id) {
      if (c != '_') expected.push_back(text::ascii_lower(c));
    }
    EXPECT_EQ(join(tokens, ""), expected) << id;
  }
}

TEST(TokenizerProperty, TokensAreNonEmptyAndUnmixed) {
  gen::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const std::string id = gen::identifier(rng);
    for (const auto& t : tokenize(id)) {
      ASSERT_FALSE(t.empty()) << id;
      const bool letters = std::all_of(t.begin(), t.end(), text::is_ascii_lower);
      const bool digits = std::all_of(t.begin(), t.end(), text::is_ascii_digit);
      EXPECT_TRUE(letters || digits) << id << " -> " << t;
    }
  }
}

TEST(TokenizerProperty, IdempotentOnJoinedOutput) {
  gen::Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    const auto tokens = tokenize(gen::identifier(rng));
    if (tokens.empty()) continue;
    EXPECT_EQ(tokenize(join(tokens, "_")), tokens);
  }
}

}  // namespace
}  // namespace codemeta
