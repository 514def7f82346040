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

// Identifier splitting following the usual camelCase / snake_case coding
// conventions: "getCarType" -> get, car, type.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "codemeta/error.hpp"
#include "codemeta/text.hpp"

namespace codemeta {

/// Checks the identifier alphabet [A-Za-z0-9_]; throws InvalidIdentifier.
inline void validate_identifier(std::string_view identifier) {
  if (identifier.empty()) {
    throw Error(ErrorCode::InvalidIdentifier, "empty identifier");
  }
  for (char c : identifier) {
    if (!text::is_ascii_alnum(c) && c != '_') {
      throw Error(ErrorCode::InvalidIdentifier,
                  "invalid character in identifier '" + std::string(identifier) + "'");
    }
  }
}

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!text::is_ascii_alnum(c) && c != '_') return false;
  }
  return true;
}

/// Splits an identifier into lowercase word tokens and digit runs.
///
/// A new token starts at every underscore (consumed), at a lower-to-upper
/// transition, at a letter/digit boundary, and before the last capital of
/// an upper-case run that is followed by a lowercase letter, so that
/// "parseXMLFile2" yields parse, xml, file, 2.
inline std::vector<std::string> tokenize(std::string_view identifier) {
  validate_identifier(identifier);

  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };

  for (std::size_t i = 0; i < identifier.size(); ++i) {
    const char c = identifier[i];
    if (c == '_') {
      flush();
      continue;
    }
    if (!current.empty()) {
      const char prev = identifier[i - 1];
      const bool digit_boundary = text::is_ascii_digit(prev) != text::is_ascii_digit(c);
      const bool camel = text::is_ascii_lower(prev) && text::is_ascii_upper(c);
      const bool acronym_end = text::is_ascii_upper(prev) && text::is_ascii_upper(c) &&
                               i + 1 < identifier.size() &&
                               text::is_ascii_lower(identifier[i + 1]);
      if (digit_boundary || camel || acronym_end) flush();
    }
    current.push_back(text::ascii_lower(c));
  }
  flush();
  return tokens;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

}  // namespace codemeta
