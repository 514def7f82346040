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

// A minimal element tree on top of expat, plus the escaping used when we
// write XML ourselves. Namespace prefixes are kept in `name`; callers that
// want prefix-agnostic matching use local_name().

#pragma once

#include <expat.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace codemeta::xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  /// Character data appearing directly inside this element, concatenated.
  std::string text;

  std::string_view local_name() const {
    auto colon = name.rfind(':');
    return colon == std::string::npos ? std::string_view(name)
                                      : std::string_view(name).substr(colon + 1);
  }

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  /// Attribute lookup ignoring any namespace prefix on the attribute name.
  const std::string* attribute_local(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      auto colon = k.rfind(':');
      std::string_view local = colon == std::string::npos ? std::string_view(k)
                                                          : std::string_view(k).substr(colon + 1);
      if (local == key) return &v;
    }
    return nullptr;
  }
};

struct ParseFailure {
  std::string message;
  long line = 0;
};

namespace detail {

struct TreeBuilder {
  std::unique_ptr<Element> root;
  std::vector<Element*> stack;

  static void on_start(void* data, const XML_Char* name, const XML_Char** atts) {
    auto* self = static_cast<TreeBuilder*>(data);
    Element element;
    element.name = name;
    for (std::size_t i = 0; atts[i] != nullptr; i += 2) {
      element.attributes.emplace_back(atts[i], atts[i + 1]);
    }
    if (self->stack.empty()) {
      self->root = std::make_unique<Element>(std::move(element));
      self->stack.push_back(self->root.get());
    } else {
      auto& siblings = self->stack.back()->children;
      siblings.push_back(std::move(element));
      self->stack.push_back(&siblings.back());
    }
  }

  static void on_end(void* data, const XML_Char*) {
    static_cast<TreeBuilder*>(data)->stack.pop_back();
  }

  static void on_text(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<TreeBuilder*>(data);
    if (!self->stack.empty()) self->stack.back()->text.append(s, static_cast<std::size_t>(len));
  }
};

struct ParserDeleter {
  void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

}  // namespace detail

/// Parses a complete document. Returns the root element, or the expat
/// diagnostic when the input is not well-formed.
inline std::pair<std::optional<Element>, ParseFailure> try_parse(std::string_view document) {
  std::unique_ptr<XML_ParserStruct, detail::ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) return {std::nullopt, {"cannot allocate XML parser", 0}};

  detail::TreeBuilder builder;
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &detail::TreeBuilder::on_start, &detail::TreeBuilder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &detail::TreeBuilder::on_text);

  // Stack pointers stay valid: an element only gains children while none of
  // its earlier children are still open.
  auto status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
  if (status != XML_STATUS_OK) {
    ParseFailure failure;
    failure.message = XML_ErrorString(XML_GetErrorCode(parser.get()));
    failure.line = static_cast<long>(XML_GetCurrentLineNumber(parser.get()));
    return {std::nullopt, failure};
  }
  if (!builder.root) return {std::nullopt, {"no root element", 0}};
  return {std::move(*builder.root), {}};
}

/// Escapes character data. '>' is escaped too so that "]]>" never appears.
inline std::string escape_text(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

/// Escapes an attribute value for double-quoted output. Whitespace other than
/// the plain space is written as a character reference so that attribute
/// value normalization on read gives back the original string.
inline std::string escape_attribute(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace codemeta::xml
