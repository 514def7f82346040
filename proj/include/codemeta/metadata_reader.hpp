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

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codemeta/interface_parser.hpp"
#include "codemeta/metadata_script.hpp"

namespace codemeta {

struct MethodDescription {
  std::vector<KeywordAnnotation> keywords;
  std::optional<std::string> description;

  bool empty() const { return keywords.empty() && !description; }
  bool operator==(const MethodDescription&) const = default;
};

/// Read-only view over a saved metadata script, for programs that consume
/// the metadata of a service. Unknown names yield empty results.
/// Copies share the same immutable snapshot.
class MetadataReader {
 public:
  explicit MetadataReader(MetadataScript script)
      : script_(std::make_shared<const MetadataScript>(std::move(script))) {}

  static MetadataReader load(const std::filesystem::path& path) {
    return MetadataReader(from_xml(read_text_file(path)));
  }

  static MetadataReader parse(std::string_view document) { return MetadataReader(from_xml(document)); }

  const MetadataScript& script() const { return *script_; }

  /// Method names are identifiers and match exactly.
  MethodDescription describe_method(std::string_view method_name) const {
    const auto* m = script_->method(method_name);
    if (m == nullptr) return {};
    return {m->keywords, m->description};
  }

  std::vector<KeywordAnnotation> describe_parameter(std::string_view method_name,
                                                    std::string_view parameter_name) const {
    const auto* m = script_->method(method_name);
    if (m == nullptr) return {};
    const auto* p = m->parameter(parameter_name);
    return p == nullptr ? std::vector<KeywordAnnotation>{} : p->keywords;
  }

  /// Keyword terms match case-insensitively.
  std::vector<std::pair<AnnotationTarget, KeywordAnnotation>> find_keyword(std::string_view term) const {
    std::vector<std::pair<AnnotationTarget, KeywordAnnotation>> out;
    for (auto& entry : annotations_in_order(*script_)) {
      if (text::iequals(entry.second.term, term)) out.push_back(std::move(entry));
    }
    return out;
  }

 private:
  std::shared_ptr<const MetadataScript> script_;
};

}  // namespace codemeta
