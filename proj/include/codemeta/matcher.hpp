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

// Matching a request against the metadata of candidate services.
//
// A requested concept is compared with every keyword a service exposes
// (annotated terms plus the raw tokens of its method and parameter names).
// The name score of a keyword is the larger of
//   - the normalized edit-distance similarity of the two words, and
//   - the expansion weight when the concept occurs in one of the keyword's
//     dictionary definitions (or the keyword occurs in the definition the
//     requester wants), e.g. "car" inside the definition of "vehicle".
// When the requester supplies the definition it has in mind, the best
// keyword's own definitions are compared with it by word-set overlap, so a
// "service" meaning "help or advice" scores lower than one meaning "routine
// inspection and maintenance of a vehicle".

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "codemeta/error.hpp"
#include "codemeta/metadata_script.hpp"
#include "codemeta/text.hpp"
#include "codemeta/tokenizer.hpp"
#include "json.hpp"

namespace codemeta {

struct MatchConfig {
  /// Name score granted by definition expansion.
  double expansion_weight = 0.9;
  /// Weight of the name score against the definition score.
  double alpha = 0.5;
  /// Minimum name score for two keywords to count as the same concept.
  double mapping_threshold = 0.7;
};

/// Words ignored when comparing definitions. Versioned with the matcher:
/// changing it changes every definition score.
inline const std::set<std::string, std::less<>>& stopwords() {
  static const std::set<std::string, std::less<>> kStopwords = {
      "a",  "an", "the", "of",  "for", "and", "or",   "to",   "in",    "on",   "at", "is",
      "are", "etc", "your", "i", "can", "that", "have", "their", "with", "by", "it"};
  return kStopwords;
}

namespace detail {

inline std::u32string folded_code_points(std::string_view s) {
  const std::string lower = text::to_lower(s);
  if (auto cps = text::decode_utf8(lower)) return *cps;
  return std::u32string(lower.begin(), lower.end());  // not UTF-8: compare bytes
}

}  // namespace detail

/// Unit-cost edit distance over case-folded code points.
inline std::size_t levenshtein(std::string_view a, std::string_view b) {
  const std::u32string x = detail::folded_code_points(a);
  const std::u32string y = detail::folded_code_points(b);
  std::vector<std::size_t> row(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + (x[i - 1] == y[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[y.size()];
}

/// 1 - distance / longer length; two empty strings are identical.
inline double token_similarity(std::string_view a, std::string_view b) {
  const std::size_t longest =
      std::max(detail::folded_code_points(a).size(), detail::folded_code_points(b).size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

/// Lowercase words of a definition, minus stopwords and pure numbers.
/// Bytes outside ASCII count as word characters so non-English words
/// survive intact.
inline std::set<std::string> definition_tokens(std::string_view definition) {
  std::set<std::string> out;
  std::string word;
  auto flush = [&] {
    if (!word.empty() && !text::all_digits(word) && !stopwords().count(word)) out.insert(word);
    word.clear();
  };
  for (char c : definition) {
    if (text::is_ascii_alnum(c) || static_cast<unsigned char>(c) >= 0x80) {
      word.push_back(text::ascii_lower(c));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

/// Jaccard index of the definition word sets; 0 when both are empty.
inline double definition_similarity(std::string_view a, std::string_view b) {
  const auto ta = definition_tokens(a);
  const auto tb = definition_tokens(b);
  if (ta.empty() && tb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& w : ta) common += tb.count(w);
  return static_cast<double>(common) / static_cast<double>(ta.size() + tb.size() - common);
}

struct ConceptRequirement {
  std::string concept_term;
  std::optional<std::string> desired_definition;

  bool operator==(const ConceptRequirement&) const = default;
};

struct MatchRequest {
  std::vector<ConceptRequirement> requirements;
};

enum class MatchKind { direct, expansion, none };

constexpr std::string_view to_string(MatchKind k) {
  switch (k) {
    case MatchKind::direct: return "direct";
    case MatchKind::expansion: return "expansion";
    case MatchKind::none: return "none";
  }
  return "none";
}

struct ConceptMatch {
  std::string concept_term;
  std::optional<std::string> matched_keyword;
  MatchKind kind = MatchKind::none;
  double name_score = 0.0;
  std::optional<double> definition_score;
  double combined_score = 0.0;

  bool operator==(const ConceptMatch&) const = default;
};

struct MatchReport {
  std::string service_id;
  std::vector<ConceptMatch> per_concept;
  double total_score = 0.0;

  bool operator==(const MatchReport&) const = default;
};

/// A keyword a service exposes, with the definitions attached to it anywhere
/// in the script (empty for raw name tokens).
struct CandidateKeyword {
  std::string term;
  std::vector<std::string> definitions;
  std::set<std::string> definition_words;

  CandidateKeyword(std::string t, std::vector<std::string> defs) : term(text::to_lower(t)), definitions(std::move(defs)) {
    for (const auto& d : definitions) definition_words.merge(definition_tokens(d));
  }
};

/// All annotated terms and name tokens of a script, sorted by term.
inline std::vector<CandidateKeyword> collect_keywords(const MetadataScript& script) {
  std::map<std::string, std::vector<std::string>> by_term;
  auto add_name = [&](const std::string& name) {
    if (!is_identifier(name)) return;
    for (auto& t : tokenize(name)) {
      if (!text::all_digits(t)) by_term[t];
    }
  };
  for (const auto& m : script.methods()) {
    add_name(m.name);
    for (const auto& k : m.keywords) by_term[text::to_lower(k.term)].push_back(k.definition);
    for (const auto& p : m.parameters) {
      add_name(p.name);
      for (const auto& k : p.keywords) by_term[text::to_lower(k.term)].push_back(k.definition);
    }
  }
  std::vector<CandidateKeyword> out;
  out.reserve(by_term.size());
  for (auto& [term, defs] : by_term) out.emplace_back(term, std::move(defs));
  return out;
}

inline ConceptMatch concept_match(const ConceptRequirement& req, const std::vector<CandidateKeyword>& keywords,
                                  const MatchConfig& config = {}) {
  ConceptMatch result;
  result.concept_term = text::to_lower(req.concept_term);
  if (keywords.empty()) return result;

  const std::set<std::string> desired_words =
      req.desired_definition ? definition_tokens(*req.desired_definition) : std::set<std::string>{};

  // Candidates arrive sorted by term; a later keyword must score strictly
  // higher to win, so ties go to the lexicographically smallest.
  const CandidateKeyword* best = nullptr;
  double best_similarity = 0.0;
  double best_expansion = 0.0;
  double best_name = -1.0;
  for (const auto& k : keywords) {
    const double similarity = token_similarity(result.concept_term, k.term);
    const bool expands = k.definition_words.count(result.concept_term) || desired_words.count(k.term);
    const double expansion = expands ? config.expansion_weight : 0.0;
    const double name = std::max(similarity, expansion);
    if (best == nullptr || name > best_name) {
      best = &k;
      best_name = name;
      best_similarity = similarity;
      best_expansion = expansion;
    }
  }

  result.name_score = best_name;
  if (best_expansion > best_similarity) {
    result.kind = MatchKind::expansion;
  } else if (best_similarity >= config.mapping_threshold) {
    result.kind = MatchKind::direct;
  } else {
    result.kind = MatchKind::none;
    return result;  // below the mapping threshold: no match
  }
  result.matched_keyword = best->term;
  result.combined_score = best_name;
  if (req.desired_definition && !best->definitions.empty()) {
    double agreement = 0.0;
    for (const auto& d : best->definitions) {
      agreement = std::max(agreement, definition_similarity(*req.desired_definition, d));
    }
    result.definition_score = agreement;
    result.combined_score = config.alpha * best_name + (1.0 - config.alpha) * agreement;
  }
  return result;
}

struct ConceptMapping {
  std::string term_a;
  std::string term_b;
  double score = 0.0;

  bool operator==(const ConceptMapping&) const = default;
};

/// Keyword pairs of two services that denote the same concept, strongest
/// first. Expansion works in both directions.
inline std::vector<ConceptMapping> map_concepts(const MetadataScript& a, const MetadataScript& b,
                                                const MatchConfig& config = {}) {
  const auto ka = collect_keywords(a);
  const auto kb = collect_keywords(b);
  std::vector<ConceptMapping> out;
  for (const auto& x : ka) {
    for (const auto& y : kb) {
      const bool expands = x.definition_words.count(y.term) || y.definition_words.count(x.term);
      const double score = std::max(token_similarity(x.term, y.term), expands ? config.expansion_weight : 0.0);
      if (score >= config.mapping_threshold) out.push_back({x.term, y.term, score});
    }
  }
  std::sort(out.begin(), out.end(), [](const ConceptMapping& l, const ConceptMapping& r) {
    if (l.score != r.score) return l.score > r.score;
    return std::tie(l.term_a, l.term_b) < std::tie(r.term_a, r.term_b);
  });
  return out;
}

inline void validate_request(const MatchRequest& request) {
  if (request.requirements.empty()) throw Error(ErrorCode::InvalidRequest, "match request has no concepts");
  std::set<std::string> seen;
  for (const auto& r : request.requirements) {
    const std::string folded = text::to_lower(text::trim(r.concept_term));
    if (folded.empty()) throw Error(ErrorCode::InvalidRequest, "empty concept in match request");
    if (!seen.insert(folded).second) throw Error(ErrorCode::InvalidRequest, "duplicate concept '" + folded + "'");
  }
}

struct Candidate {
  std::string service_id;
  MetadataScript script;
};

/// Best service first; equal totals are ordered by service id.
inline std::vector<MatchReport> rank_services(const MatchRequest& request, const std::vector<Candidate>& candidates,
                                              const MatchConfig& config = {}) {
  validate_request(request);
  if (candidates.empty()) throw Error(ErrorCode::InvalidRequest, "no candidate services");

  std::vector<MatchReport> reports;
  reports.reserve(candidates.size());
  for (const auto& c : candidates) {
    const auto keywords = collect_keywords(c.script);
    MatchReport report;
    report.service_id = c.service_id;
    double sum = 0.0;
    for (const auto& req : request.requirements) {
      ConceptRequirement trimmed{std::string(text::trim(req.concept_term)), req.desired_definition};
      report.per_concept.push_back(concept_match(trimmed, keywords, config));
      sum += report.per_concept.back().combined_score;
    }
    report.total_score = sum / static_cast<double>(request.requirements.size());
    reports.push_back(std::move(report));
  }
  std::sort(reports.begin(), reports.end(), [](const MatchReport& l, const MatchReport& r) {
    if (l.total_score != r.total_score) return l.total_score > r.total_score;
    return l.service_id < r.service_id;
  });
  return reports;
}

// JSON ----------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const ConceptRequirement& r) {
  j = nlohmann::json{{"concept", r.concept_term}};
  if (r.desired_definition) j["desiredDefinition"] = *r.desired_definition;
}

inline void to_json(nlohmann::json& j, const MatchRequest& r) { j = nlohmann::json{{"concepts", r.requirements}}; }

/// Accepts {"concepts":[{"concept":..., "desiredDefinition":...}]}.
/// Throws InvalidRequest on anything else.
inline MatchRequest match_request_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("concepts") || !j["concepts"].is_array()) {
    throw Error(ErrorCode::InvalidRequest, "match request must be an object with a \"concepts\" array");
  }
  MatchRequest request;
  for (const auto& c : j["concepts"]) {
    if (!c.is_object() || !c.contains("concept") || !c["concept"].is_string()) {
      throw Error(ErrorCode::InvalidRequest, "each concept needs a string \"concept\" field");
    }
    ConceptRequirement r;
    r.concept_term = c["concept"].get<std::string>();
    if (auto it = c.find("desiredDefinition"); it != c.end() && !it->is_null()) {
      if (!it->is_string()) throw Error(ErrorCode::InvalidRequest, "\"desiredDefinition\" must be a string");
      r.desired_definition = it->get<std::string>();
    }
    request.requirements.push_back(std::move(r));
  }
  return request;
}

inline MatchRequest parse_match_request(std::string_view document) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidRequest, std::string("match request is not valid JSON: ") + e.what());
  }
  return match_request_from_json(j);
}

inline void to_json(nlohmann::json& j, const ConceptMatch& m) {
  j = nlohmann::json{{"concept", m.concept_term},
                     {"matchedKeyword", m.matched_keyword ? nlohmann::json(*m.matched_keyword) : nlohmann::json()},
                     {"kind", to_string(m.kind)},
                     {"nameScore", m.name_score},
                     {"definitionScore", m.definition_score ? nlohmann::json(*m.definition_score) : nlohmann::json()},
                     {"combinedScore", m.combined_score}};
}

inline void to_json(nlohmann::json& j, const MatchReport& r) {
  j = nlohmann::json{{"serviceId", r.service_id}, {"perConcept", r.per_concept}, {"totalScore", r.total_score}};
}

inline void to_json(nlohmann::json& j, const ConceptMapping& m) {
  j = nlohmann::json{{"termA", m.term_a}, {"termB", m.term_b}, {"score", m.score}};
}

}  // namespace codemeta
