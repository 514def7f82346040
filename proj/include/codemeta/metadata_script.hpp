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

// The metadata script: per-method and per-parameter keyword annotations,
// each a (term, language, source, definition) record, stored append-only and
// serialized to a fixed XML layout:
//
//   <codeMetadata version="1.0" interface=".." sourceFile=".." sourceType="java|wsdl">
//     <method name="..">
//       <description>..</description>
//       <keyword term=".." language=".." source="..">definition</keyword>
//       <parameter name="..">
//         <keyword term=".." language=".." source="..">definition</keyword>
//       </parameter>
//     </method>
//   </codeMetadata>

#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "codemeta/error.hpp"
#include "codemeta/interface_parser.hpp"
#include "codemeta/text.hpp"
#include "codemeta/xml.hpp"
#include "json.hpp"

namespace codemeta {

struct KeywordAnnotation {
  std::string term;
  std::string language;
  std::string source;
  std::string definition;

  bool operator==(const KeywordAnnotation&) const = default;
};

struct AnnotationTarget {
  std::string method_name;
  std::optional<std::string> parameter_name;

  bool operator==(const AnnotationTarget&) const = default;
};

inline void to_json(nlohmann::json& j, const KeywordAnnotation& a) {
  j = nlohmann::json{{"term", a.term}, {"language", a.language}, {"source", a.source}, {"definition", a.definition}};
}

inline void from_json(const nlohmann::json& j, KeywordAnnotation& a) {
  j.at("term").get_to(a.term);
  j.at("language").get_to(a.language);
  j.at("source").get_to(a.source);
  j.at("definition").get_to(a.definition);
}

inline void to_json(nlohmann::json& j, const AnnotationTarget& t) {
  j = nlohmann::json{{"methodName", t.method_name}};
  if (t.parameter_name) j["parameterName"] = *t.parameter_name;
}

inline void from_json(const nlohmann::json& j, AnnotationTarget& t) {
  j.at("methodName").get_to(t.method_name);
  t.parameter_name.reset();
  if (auto it = j.find("parameterName"); it != j.end() && !it->is_null()) t.parameter_name = it->get<std::string>();
}

struct ParameterEntry {
  std::string name;
  std::vector<KeywordAnnotation> keywords;

  bool operator==(const ParameterEntry&) const = default;
};

struct MethodEntry {
  std::string name;
  std::optional<std::string> description;
  std::vector<KeywordAnnotation> keywords;
  std::vector<ParameterEntry> parameters;

  bool operator==(const MethodEntry&) const = default;

  const ParameterEntry* parameter(std::string_view n) const {
    for (const auto& p : parameters) {
      if (p.name == n) return &p;
    }
    return nullptr;
  }
};

/// Checks the annotation invariants and returns a copy with the term
/// case-folded. Throws InvalidAnnotation.
inline KeywordAnnotation normalize_annotation(KeywordAnnotation ann) {
  auto require = [](const std::string& value, const char* field) {
    if (value.empty()) throw Error(ErrorCode::InvalidAnnotation, std::string("annotation ") + field + " is empty");
    if (!text::is_xml_text(value)) {
      throw Error(ErrorCode::InvalidAnnotation, std::string("annotation ") + field + " is not valid UTF-8 XML text");
    }
  };
  require(ann.term, "term");
  require(ann.language, "language");
  require(ann.source, "source");
  require(ann.definition, "definition");
  ann.term = text::to_lower(ann.term);
  return ann;
}

/// Annotation state for one interface. Entries are keyed by method name, so
/// overloads share one entry. Annotations can only be appended.
class MetadataScript {
 public:
  MetadataScript() = default;
  MetadataScript(std::string interface_name, std::string source_file, SourceType source_type)
      : interface_name_(std::move(interface_name)),
        source_file_(std::move(source_file)),
        source_type_(source_type) {}

  const std::string& interface_name() const { return interface_name_; }
  const std::string& source_file() const { return source_file_; }
  SourceType source_type() const { return source_type_; }
  const std::vector<MethodEntry>& methods() const { return methods_; }

  const MethodEntry* method(std::string_view name) const {
    for (const auto& m : methods_) {
      if (m.name == name) return &m;
    }
    return nullptr;
  }

  /// Returns the existing entry when the name is already present.
  MethodEntry& ensure_method(const std::string& name) {
    if (name.empty()) throw Error(ErrorCode::InvalidArgument, "empty method name");
    for (auto& m : methods_) {
      if (m.name == name) return m;
    }
    methods_.push_back(MethodEntry{name, std::nullopt, {}, {}});
    return methods_.back();
  }

  ParameterEntry& ensure_parameter(const std::string& method_name, const std::string& parameter_name) {
    if (parameter_name.empty()) throw Error(ErrorCode::InvalidArgument, "empty parameter name");
    auto& m = ensure_method(method_name);
    for (auto& p : m.parameters) {
      if (p.name == parameter_name) return p;
    }
    m.parameters.push_back(ParameterEntry{parameter_name, {}});
    return m.parameters.back();
  }

  void add_annotation(const AnnotationTarget& target, KeywordAnnotation ann) {
    auto normalized = normalize_annotation(std::move(ann));
    mutable_target(target).push_back(std::move(normalized));
  }

  void set_description(const std::string& method_name, std::string description) {
    if (!text::is_xml_text(description)) {
      throw Error(ErrorCode::InvalidAnnotation, "description is not valid UTF-8 XML text");
    }
    auto* m = find_method(method_name);
    if (m == nullptr) throw Error(ErrorCode::UnknownTarget, "unknown method '" + method_name + "'");
    m->description = std::move(description);
  }

  std::size_t annotation_count() const {
    std::size_t n = 0;
    for (const auto& m : methods_) {
      n += m.keywords.size();
      for (const auto& p : m.parameters) n += p.keywords.size();
    }
    return n;
  }

  bool operator==(const MetadataScript&) const = default;

 private:
  MethodEntry* find_method(std::string_view name) {
    for (auto& m : methods_) {
      if (m.name == name) return &m;
    }
    return nullptr;
  }

  std::vector<KeywordAnnotation>& mutable_target(const AnnotationTarget& target) {
    auto* m = find_method(target.method_name);
    if (m == nullptr) throw Error(ErrorCode::UnknownTarget, "unknown method '" + target.method_name + "'");
    if (!target.parameter_name) return m->keywords;
    for (auto& p : m->parameters) {
      if (p.name == *target.parameter_name) return p.keywords;
    }
    throw Error(ErrorCode::UnknownTarget,
                "unknown parameter '" + *target.parameter_name + "' of method '" + target.method_name + "'");
  }

  std::string interface_name_;
  std::string source_file_;
  SourceType source_type_ = SourceType::java;
  std::vector<MethodEntry> methods_;
};

/// One empty entry per distinct method name; overloads contribute the
/// union of their parameter names in order of first appearance.
inline MetadataScript new_script(const InterfaceModel& model) {
  MetadataScript script(model.interface_name, model.source_file, model.source_type);
  for (const auto& m : model.methods) {
    script.ensure_method(m.name);
    for (const auto& p : m.parameters) script.ensure_parameter(m.name, p.name);
  }
  return script;
}

inline MetadataScript add_annotation(MetadataScript script, const AnnotationTarget& target, KeywordAnnotation ann) {
  script.add_annotation(target, std::move(ann));
  return script;
}

inline std::string to_xml(const MetadataScript& script) {
  using xml::escape_attribute;
  using xml::escape_text;
  auto keyword = [](std::string& out, const KeywordAnnotation& k, std::string_view indent) {
    out += indent;
    out += "<keyword term=\"" + escape_attribute(k.term) + "\" language=\"" + escape_attribute(k.language) +
           "\" source=\"" + escape_attribute(k.source) + "\">" + escape_text(k.definition) + "</keyword>\n";
  };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<codeMetadata version=\"1.0\" interface=\"" + escape_attribute(script.interface_name()) +
         "\" sourceFile=\"" + escape_attribute(script.source_file()) + "\" sourceType=\"" +
         std::string(to_string(script.source_type())) + "\"";
  if (script.methods().empty()) return out + "/>\n";
  out += ">\n";
  for (const auto& m : script.methods()) {
    out += "  <method name=\"" + escape_attribute(m.name) + "\"";
    if (!m.description && m.keywords.empty() && m.parameters.empty()) {
      out += "/>\n";
      continue;
    }
    out += ">\n";
    if (m.description) out += "    <description>" + escape_text(*m.description) + "</description>\n";
    for (const auto& k : m.keywords) keyword(out, k, "    ");
    for (const auto& p : m.parameters) {
      out += "    <parameter name=\"" + escape_attribute(p.name) + "\"";
      if (p.keywords.empty()) {
        out += "/>\n";
        continue;
      }
      out += ">\n";
      for (const auto& k : p.keywords) keyword(out, k, "      ");
      out += "    </parameter>\n";
    }
    out += "  </method>\n";
  }
  out += "</codeMetadata>\n";
  return out;
}

namespace detail {

[[noreturn]] inline void schema_fail(const std::string& what) { throw Error(ErrorCode::SchemaError, what); }

inline const std::string& required_attribute(const xml::Element& e, const char* name) {
  const auto* v = e.attribute(name);
  if (v == nullptr) schema_fail(e.name + "/@" + name);
  return *v;
}

inline void require_no_text(const xml::Element& e) {
  if (!text::trim(e.text).empty()) schema_fail(e.name + ": unexpected text content");
}

inline KeywordAnnotation read_keyword(const xml::Element& e) {
  if (!e.children.empty()) schema_fail("keyword: unexpected child element <" + e.children.front().name + ">");
  KeywordAnnotation k{required_attribute(e, "term"), required_attribute(e, "language"),
                      required_attribute(e, "source"), e.text};
  if (k.term.empty()) schema_fail("keyword/@term");
  if (k.language.empty()) schema_fail("keyword/@language");
  if (k.source.empty()) schema_fail("keyword/@source");
  if (k.definition.empty()) schema_fail("keyword: empty definition");
  k.term = text::to_lower(k.term);
  return k;
}

}  // namespace detail

inline MetadataScript from_xml(std::string_view document) {
  using detail::required_attribute;
  using detail::schema_fail;
  auto [root, failure] = xml::try_parse(document);
  if (!root) schema_fail("not well-formed XML (line " + std::to_string(failure.line) + "): " + failure.message);
  if (root->name != "codeMetadata") schema_fail("root element must be codeMetadata, found " + root->name);
  if (required_attribute(*root, "version") != "1.0") schema_fail("codeMetadata/@version must be 1.0");
  const std::string& type = required_attribute(*root, "sourceType");
  if (type != "java" && type != "wsdl") schema_fail("codeMetadata/@sourceType");
  MetadataScript script(required_attribute(*root, "interface"), required_attribute(*root, "sourceFile"),
                        source_type_from_string(type));
  detail::require_no_text(*root);

  for (const auto& me : root->children) {
    if (me.name != "method") schema_fail("unexpected element <" + me.name + "> in codeMetadata");
    const std::string& method_name = required_attribute(me, "name");
    if (method_name.empty()) schema_fail("method/@name");
    if (script.method(method_name) != nullptr) schema_fail("duplicate method '" + method_name + "'");
    script.ensure_method(method_name);
    detail::require_no_text(me);
    bool seen_description = false;
    for (const auto& child : me.children) {
      if (child.name == "description") {
        if (seen_description) schema_fail("method '" + method_name + "': more than one description");
        if (!child.children.empty()) schema_fail("description: unexpected child element");
        seen_description = true;
        script.set_description(method_name, child.text);
      } else if (child.name == "keyword") {
        script.add_annotation({method_name, std::nullopt}, detail::read_keyword(child));
      } else if (child.name == "parameter") {
        const std::string& param_name = required_attribute(child, "name");
        if (param_name.empty()) schema_fail("parameter/@name");
        const auto* m = script.method(method_name);
        if (m->parameter(param_name) != nullptr) schema_fail("duplicate parameter '" + param_name + "'");
        script.ensure_parameter(method_name, param_name);
        detail::require_no_text(child);
        for (const auto& ke : child.children) {
          if (ke.name != "keyword") schema_fail("unexpected element <" + ke.name + "> in parameter");
          script.add_annotation({method_name, param_name}, detail::read_keyword(ke));
        }
      } else {
        schema_fail("unexpected element <" + child.name + "> in method");
      }
    }
  }
  return script;
}

namespace detail {

inline std::string single_line(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace detail

/// `method[.param] :: term | language | source | definition`, one line per
/// annotation in script order.
inline std::string to_display(const MetadataScript& script) {
  std::string out;
  auto line = [&](const std::string& target, const KeywordAnnotation& k) {
    out += target + " :: " + k.term + " | " + k.language + " | " + k.source + " | " +
           detail::single_line(k.definition) + "\n";
  };
  for (const auto& m : script.methods()) {
    for (const auto& k : m.keywords) line(m.name, k);
    for (const auto& p : m.parameters) {
      for (const auto& k : p.keywords) line(m.name + "." + p.name, k);
    }
  }
  return out;
}

/// Flattened (target, annotation) sequence in script order.
inline std::vector<std::pair<AnnotationTarget, KeywordAnnotation>> annotations_in_order(const MetadataScript& script) {
  std::vector<std::pair<AnnotationTarget, KeywordAnnotation>> out;
  for (const auto& m : script.methods()) {
    for (const auto& k : m.keywords) out.push_back({{m.name, std::nullopt}, k});
    for (const auto& p : m.parameters) {
      for (const auto& k : p.keywords) out.push_back({{m.name, p.name}, k});
    }
  }
  return out;
}

}  // namespace codemeta
