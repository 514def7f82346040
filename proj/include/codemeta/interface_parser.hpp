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

// Extracts method declarations from Java sources and WSDL 1.1 documents.
//
// The Java side is a declaration scanner rather than a grammar: it finds the
// first top-level class or interface, then looks for `modifiers type name(...)`
// heads at class-body depth, skipping bodies, nested types, initializers,
// comments and literals. The WSDL side reads portType operations and the parts
// of each operation's input message, matching elements by local name.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "codemeta/error.hpp"
#include "codemeta/text.hpp"
#include "codemeta/tokenizer.hpp"
#include "codemeta/xml.hpp"
#include "json.hpp"

namespace codemeta {

enum class SourceType { java, wsdl };

constexpr std::string_view to_string(SourceType t) { return t == SourceType::java ? "java" : "wsdl"; }

inline SourceType source_type_from_string(std::string_view s) {
  if (s == "java") return SourceType::java;
  if (s == "wsdl") return SourceType::wsdl;
  throw Error(ErrorCode::InvalidArgument, "unknown source type '" + std::string(s) + "'");
}

struct ParameterDecl {
  std::string name;
  std::vector<std::string> tokens;
  std::string declared_type;

  bool operator==(const ParameterDecl&) const = default;
};

struct MethodDecl {
  std::string name;
  std::vector<std::string> tokens;
  std::vector<ParameterDecl> parameters;
  std::string return_type;

  bool operator==(const MethodDecl&) const = default;
};

struct InterfaceModel {
  std::string source_file;
  SourceType source_type = SourceType::java;
  std::string interface_name;
  std::vector<MethodDecl> methods;

  bool operator==(const InterfaceModel&) const = default;
};

inline void to_json(nlohmann::json& j, const ParameterDecl& p) {
  j = nlohmann::json{{"name", p.name}, {"tokens", p.tokens}, {"declaredType", p.declared_type}};
}

inline void to_json(nlohmann::json& j, const MethodDecl& m) {
  j = nlohmann::json{
      {"name", m.name}, {"tokens", m.tokens}, {"parameters", m.parameters}, {"returnType", m.return_type}};
}

inline void to_json(nlohmann::json& j, const InterfaceModel& model) {
  j = nlohmann::json{{"sourceFile", model.source_file},
                     {"sourceType", to_string(model.source_type)},
                     {"interfaceName", model.interface_name},
                     {"methods", model.methods}};
}

inline SourceType detect_source_type(const std::filesystem::path& path) {
  const std::string ext = text::to_lower(path.extension().string());
  if (ext == ".java") return SourceType::java;
  if (ext == ".wsdl" || ext == ".xml") return SourceType::wsdl;
  throw Error(ErrorCode::UnsupportedFileType,
              "unsupported file type '" + path.filename().string() + "' (expected .java, .wsdl or .xml)");
}

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& message) {
  throw Error(ErrorCode::ParseError, message);
}

/// Replaces comments and string/char literals with spaces (newlines kept)
/// so that structural scanning never sees their contents.
inline std::string blank_java_noise(std::string_view src) {
  std::string out(src);
  auto blank = [&](std::size_t from, std::size_t to) {
    for (std::size_t k = from; k < to; ++k) {
      if (out[k] != '\n') out[k] = ' ';
    }
  };
  std::size_t i = 0;
  while (i < src.size()) {
    if (src.compare(i, 2, "//") == 0) {
      auto end = src.find('\n', i);
      if (end == std::string_view::npos) end = src.size();
      blank(i, end);
      i = end;
    } else if (src.compare(i, 2, "/*") == 0) {
      auto end = src.find("*/", i + 2);
      if (end == std::string_view::npos) parse_fail("unterminated block comment");
      blank(i, end + 2);
      i = end + 2;
    } else if (src.compare(i, 3, "\"\"\"") == 0) {
      auto end = src.find("\"\"\"", i + 3);
      if (end == std::string_view::npos) parse_fail("unterminated text block");
      blank(i, end + 3);
      i = end + 3;
    } else if (src[i] == '"' || src[i] == '\'') {
      const char quote = src[i];
      std::size_t k = i + 1;
      while (k < src.size() && src[k] != quote) {
        if (src[k] == '\n') parse_fail("unterminated literal");
        k += src[k] == '\\' ? 2 : 1;
      }
      if (k >= src.size()) parse_fail("unterminated literal");
      blank(i, k + 1);
      i = k + 1;
    } else {
      ++i;
    }
  }
  return out;
}

inline bool is_java_ident_char(char c) {
  return text::is_ascii_alnum(c) || c == '_' || c == '$' || static_cast<unsigned char>(c) >= 0x80;
}

inline std::size_t skip_space(std::string_view s, std::size_t i) {
  while (i < s.size() && text::is_space(s[i])) ++i;
  return i;
}

/// Blanks annotations such as `@Override` or `@WebMethod(name = "x")`.
inline void blank_annotations(std::string& s) {
  std::size_t i = 0;
  while ((i = s.find('@', i)) != std::string::npos) {
    std::size_t k = i + 1;
    while (k < s.size() && (is_java_ident_char(s[k]) || s[k] == '.')) ++k;
    if (k == i + 1) {
      ++i;
      continue;
    }
    std::size_t after = skip_space(s, k);
    // `@interface` declares an annotation type; leave the keyword alone.
    if (std::string_view(s).substr(i + 1, k - i - 1) == "interface") {
      i = k;
      continue;
    }
    std::size_t end = k;
    if (after < s.size() && s[after] == '(') {
      int depth = 0;
      std::size_t p = after;
      for (; p < s.size(); ++p) {
        if (s[p] == '(') ++depth;
        if (s[p] == ')' && --depth == 0) break;
      }
      if (p >= s.size()) parse_fail("unbalanced parentheses in annotation");
      end = p + 1;
    }
    for (std::size_t p = i; p < end; ++p) {
      if (s[p] != '\n') s[p] = ' ';
    }
    i = end;
  }
}

inline void check_balanced(std::string_view s) {
  std::vector<char> stack;
  for (char c : s) {
    if (c == '{' || c == '(') {
      stack.push_back(c);
    } else if (c == '}' || c == ')') {
      const char open = c == '}' ? '{' : '(';
      if (stack.empty() || stack.back() != open) {
        parse_fail(std::string("unbalanced '") + c + "'");
      }
      stack.pop_back();
    }
  }
  if (!stack.empty()) {
    parse_fail(std::string("unbalanced '") + stack.back() + "'");
  }
}

inline std::size_t matching_close(std::string_view s, std::size_t open_pos) {
  const char open = s[open_pos];
  const char close = open == '{' ? '}' : ')';
  int depth = 0;
  for (std::size_t i = open_pos; i < s.size(); ++i) {
    if (s[i] == open) ++depth;
    if (s[i] == close && --depth == 0) return i;
  }
  parse_fail(std::string("unbalanced '") + open + "'");
}

/// Splits a declaration head into identifier words and type punctuation.
inline std::vector<std::string> lex_declaration(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (text::is_space(c)) {
      ++i;
    } else if (is_java_ident_char(c)) {
      std::size_t k = i;
      while (k < s.size() && (is_java_ident_char(s[k]) || s[k] == '.')) ++k;
      out.emplace_back(s.substr(i, k - i));
      i = k;
    } else if (s.compare(i, 3, "...") == 0) {
      out.emplace_back("...");
      i += 3;
    } else {
      out.emplace_back(1, c);
      ++i;
    }
  }
  return out;
}

inline bool is_modifier(std::string_view w) {
  static const std::set<std::string_view> kModifiers = {
      "public", "protected", "private", "static", "final", "abstract", "synchronized",
      "native", "default", "strictfp", "transient", "volatile", "sealed", "non-sealed"};
  return kModifiers.count(w) != 0;
}

inline bool is_statement_keyword(std::string_view w) {
  static const std::set<std::string_view> kKeywords = {
      "if", "for", "while", "switch", "catch", "return", "new", "throw", "synchronized",
      "try", "do", "else", "assert", "super", "this"};
  return kKeywords.count(w) != 0;
}

/// Renders lexed type words back into a compact type string.
inline std::string join_type(const std::vector<std::string>& words, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    const std::string& w = words[i];
    const bool word = is_java_ident_char(w[0]);
    if (!out.empty() && word && is_java_ident_char(out.back())) out.push_back(' ');
    if (w == "," ) {
      out += ", ";
      continue;
    }
    out += w;
  }
  return out;
}

struct DeclHead {
  std::string name;
  std::string type;  // empty for constructors
};

/// Interprets the text before '(' as `modifiers <generics>? type name`.
/// Returns false when it is not a method head (call, constructor, field init).
inline bool read_method_head(std::string_view head, DeclHead& out) {
  if (head.find('=') != std::string_view::npos) return false;
  auto words = lex_declaration(head);
  if (words.empty()) return false;
  const std::string& name = words.back();
  if (!is_java_ident_char(name[0]) || text::is_ascii_digit(name[0]) ||
      name.find('.') != std::string::npos || is_statement_keyword(name)) {
    return false;
  }
  std::size_t start = 0;
  while (start + 1 < words.size() && is_modifier(words[start])) ++start;
  if (start + 1 < words.size() && words[start] == "<") {
    int depth = 0;
    for (; start < words.size() - 1; ++start) {
      if (words[start] == "<") ++depth;
      if (words[start] == ">" && --depth == 0) {
        ++start;
        break;
      }
    }
  }
  const std::size_t end = words.size() - 1;
  if (start >= end) return false;  // constructor: no return type
  for (std::size_t i = start; i < end; ++i) {
    const std::string& w = words[i];
    const bool ok = is_java_ident_char(w[0]) || w == "<" || w == ">" || w == "[" || w == "]" ||
                    w == "," || w == "?" || w == "&";
    if (!ok) return false;
  }
  out.name = name;
  out.type = join_type(words, start, end);
  return true;
}

/// Splits a parameter list at top-level commas.
inline std::vector<ParameterDecl> read_parameters(std::string_view list, const std::string& method) {
  std::vector<ParameterDecl> params;
  if (text::trim(list).empty()) return params;

  std::vector<std::string_view> pieces;
  int depth = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == '<') ++depth;
    if (list[i] == '>') --depth;
    if (list[i] == ',' && depth == 0) {
      pieces.push_back(list.substr(begin, i - begin));
      begin = i + 1;
    }
  }
  pieces.push_back(list.substr(begin));

  std::set<std::string> seen;
  for (std::string_view piece : pieces) {
    auto words = lex_declaration(piece);
    while (!words.empty() && (words.front() == "final")) words.erase(words.begin());
    // C-style array suffix: `int values[]`
    std::size_t dims = 0;
    while (words.size() >= 2 && words.back() == "]" && words[words.size() - 2] == "[") {
      words.resize(words.size() - 2);
      ++dims;
    }
    if (words.size() < 2) parse_fail("cannot read parameter '" + std::string(text::trim(piece)) + "' of " + method);
    ParameterDecl p;
    p.name = words.back();
    if (!is_identifier(p.name)) {
      parse_fail("parameter name '" + p.name + "' of " + method + " is not a plain identifier");
    }
    p.declared_type = join_type(words, 0, words.size() - 1);
    for (std::size_t d = 0; d < dims; ++d) p.declared_type += "[]";
    p.tokens = tokenize(p.name);
    if (!seen.insert(p.name).second) parse_fail("duplicate parameter '" + p.name + "' in " + method);
    params.push_back(std::move(p));
  }
  return params;
}

/// Adds `m` unless a method with the same name and arity is already present.
inline void add_method(std::vector<MethodDecl>& methods, MethodDecl m) {
  for (const auto& existing : methods) {
    if (existing.name == m.name && existing.parameters.size() == m.parameters.size()) return;
  }
  methods.push_back(std::move(m));
}

inline bool word_at(std::string_view s, std::size_t pos, std::string_view word) {
  if (s.compare(pos, word.size(), word) != 0) return false;
  if (pos > 0 && (is_java_ident_char(s[pos - 1]) || s[pos - 1] == '.')) return false;
  const std::size_t after = pos + word.size();
  return after >= s.size() || !is_java_ident_char(s[after]);
}

}  // namespace detail

inline InterfaceModel parse_java(std::string_view source, const std::string& path) {
  using namespace detail;
  std::string s = blank_java_noise(source);
  blank_annotations(s);
  check_balanced(s);

  // First class/interface/enum/record keyword at top level.
  std::size_t keyword_end = std::string::npos;
  int depth = 0;
  for (std::size_t i = 0; i < s.size() && keyword_end == std::string::npos; ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}') --depth;
    if (depth != 0) continue;
    for (std::string_view kw : {"class", "interface", "enum", "record"}) {
      if (word_at(s, i, kw)) {
        keyword_end = i + kw.size();
        break;
      }
    }
  }
  if (keyword_end == std::string::npos) parse_fail("no class declaration found in " + path);

  std::size_t p = skip_space(s, keyword_end);
  std::size_t name_end = p;
  while (name_end < s.size() && is_java_ident_char(s[name_end])) ++name_end;
  if (name_end == p) parse_fail("class declaration without a name in " + path);

  InterfaceModel model;
  model.source_file = path;
  model.source_type = SourceType::java;
  model.interface_name = s.substr(p, name_end - p);

  const std::size_t open = s.find('{', name_end);
  if (open == std::string::npos) parse_fail("class " + model.interface_name + " has no body");
  const std::size_t close = matching_close(s, open);
  const std::string_view body = std::string_view(s).substr(open + 1, close - open - 1);

  std::size_t segment = 0;
  std::size_t i = 0;
  while (i < body.size()) {
    const char c = body[i];
    if (c == ';') {
      segment = ++i;
    } else if (c == '{') {
      // Nested type, initializer block, or array initializer.
      i = matching_close(body, i) + 1;
      segment = i;
    } else if (c == '(') {
      const std::size_t rparen = matching_close(body, i);
      DeclHead head;
      if (!read_method_head(body.substr(segment, i - segment), head)) {
        i = rparen + 1;
        continue;
      }
      // After ')': optional legacy array dims and a throws clause, then '{' or ';'.
      std::size_t k = rparen + 1;
      while (k < body.size() && body[k] != '{' && body[k] != ';' && body[k] != '(' && body[k] != '=') ++k;
      if (k >= body.size() || body[k] == '(' || body[k] == '=') {
        i = rparen + 1;
        continue;
      }
      if (!is_identifier(head.name)) {
        parse_fail("method name '" + head.name + "' is not a plain identifier");
      }
      MethodDecl m;
      m.name = head.name;
      m.tokens = tokenize(m.name);
      m.return_type = head.type;
      m.parameters = read_parameters(body.substr(i + 1, rparen - i - 1), m.name);
      add_method(model.methods, std::move(m));
      i = body[k] == '{' ? matching_close(body, k) + 1 : k + 1;
      segment = i;
    } else {
      ++i;
    }
  }
  return model;
}

inline InterfaceModel parse_wsdl(std::string_view document, const std::string& path) {
  using detail::parse_fail;
  auto [root, failure] = xml::try_parse(document);
  if (!root) {
    parse_fail("malformed XML in " + path + " (line " + std::to_string(failure.line) + "): " + failure.message);
  }

  const xml::Element* port_type = nullptr;
  std::map<std::string, const xml::Element*> messages;
  std::vector<const xml::Element*> pending{&*root};
  while (!pending.empty()) {
    const xml::Element* e = pending.back();
    pending.pop_back();
    if (e->local_name() == "portType" && port_type == nullptr) port_type = e;
    if (e->local_name() == "message") {
      if (const auto* n = e->attribute("name")) messages.emplace(*n, e);
    }
    for (auto it = e->children.rbegin(); it != e->children.rend(); ++it) pending.push_back(&*it);
  }
  if (port_type == nullptr) parse_fail("no portType element in " + path);

  auto strip_prefix = [](const std::string& qname) {
    auto colon = qname.rfind(':');
    return colon == std::string::npos ? qname : qname.substr(colon + 1);
  };
  auto find_message = [&](const xml::Element& io, const std::string& op) -> const xml::Element* {
    const auto* ref = io.attribute("message");
    if (ref == nullptr) parse_fail("operation " + op + ": <" + std::string(io.local_name()) + "> has no message attribute");
    auto it = messages.find(strip_prefix(*ref));
    if (it == messages.end()) parse_fail("operation " + op + " references missing message '" + *ref + "'");
    return it->second;
  };
  auto part_type = [](const xml::Element& part) -> std::string {
    if (const auto* t = part.attribute("type")) return *t;
    if (const auto* t = part.attribute("element")) return *t;
    return {};
  };

  InterfaceModel model;
  model.source_file = path;
  model.source_type = SourceType::wsdl;
  const auto* pt_name = port_type->attribute("name");
  if (pt_name == nullptr) parse_fail("portType without a name in " + path);
  model.interface_name = *pt_name;

  for (const auto& op : port_type->children) {
    if (op.local_name() != "operation") continue;
    const auto* op_name = op.attribute("name");
    if (op_name == nullptr) parse_fail("operation without a name in portType " + model.interface_name);
    if (!is_identifier(*op_name)) parse_fail("operation name '" + *op_name + "' is not a plain identifier");

    MethodDecl m;
    m.name = *op_name;
    m.tokens = tokenize(m.name);
    std::set<std::string> seen;
    for (const auto& io : op.children) {
      if (io.local_name() == "input") {
        for (const auto& part : find_message(io, m.name)->children) {
          if (part.local_name() != "part") continue;
          const auto* part_name = part.attribute("name");
          if (part_name == nullptr) parse_fail("part without a name in input of " + m.name);
          if (!is_identifier(*part_name)) parse_fail("part name '" + *part_name + "' is not a plain identifier");
          if (!seen.insert(*part_name).second) parse_fail("duplicate part '" + *part_name + "' in input of " + m.name);
          m.parameters.push_back({*part_name, tokenize(*part_name), part_type(part)});
        }
      } else if (io.local_name() == "output") {
        for (const auto& part : find_message(io, m.name)->children) {
          if (part.local_name() == "part") {
            m.return_type = part_type(part);
            break;
          }
        }
      }
    }
    detail::add_method(model.methods, std::move(m));
  }
  return model;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Dispatches on extension. `path` is recorded as the model's source file.
inline InterfaceModel parse_source(std::string_view content, const std::filesystem::path& path) {
  return detect_source_type(path) == SourceType::java ? parse_java(content, path.string())
                                                      : parse_wsdl(content, path.string());
}

inline InterfaceModel parse_file(const std::filesystem::path& path) {
  detect_source_type(path);
  return parse_source(read_text_file(path), path);
}

/// Union of method and parameter name tokens, digit runs excluded.
inline std::set<std::string> extract_keywords(const InterfaceModel& model) {
  std::set<std::string> out;
  auto add = [&](const std::vector<std::string>& tokens) {
    for (const auto& t : tokens) {
      if (!text::all_digits(t)) out.insert(t);
    }
  };
  for (const auto& m : model.methods) {
    add(m.tokens);
    for (const auto& p : m.parameters) add(p.tokens);
  }
  return out;
}

}  // namespace codemeta
