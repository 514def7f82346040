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

// Dictionary providers and the gateway that queries them.
//
// Every definition handed out carries the URL of the dictionary it came
// from. Providers are either a local JSON-lines file or a remote site reached
// through a caller-supplied fetch hook; results of both are cached on disk,
// one file per (provider, language, term).

#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "codemeta/error.hpp"
#include "codemeta/text.hpp"
#include "json.hpp"

namespace codemeta {

struct DefinitionRecord {
  std::string term;
  std::string language;
  std::string source;
  std::string definition;

  bool operator==(const DefinitionRecord&) const = default;
};

inline void to_json(nlohmann::json& j, const DefinitionRecord& r) {
  j = nlohmann::json{{"term", r.term}, {"language", r.language}, {"source", r.source}, {"definition", r.definition}};
}

inline void from_json(const nlohmann::json& j, DefinitionRecord& r) {
  j.at("term").get_to(r.term);
  j.at("language").get_to(r.language);
  j.at("source").get_to(r.source);
  j.at("definition").get_to(r.definition);
}

enum class ProviderKind { local_file, http };

struct ProviderConfig {
  std::string id;
  std::string display_name;
  /// Absolute URL. For local-file providers this is a file:// URL naming
  /// the JSON-lines dictionary.
  std::string base_url;
  ProviderKind kind = ProviderKind::http;
  std::vector<std::string> languages;

  bool operator==(const ProviderConfig&) const = default;
};

inline void to_json(nlohmann::json& j, const ProviderConfig& p) {
  j = nlohmann::json{{"id", p.id},
                     {"displayName", p.display_name},
                     {"baseUrl", p.base_url},
                     {"kind", p.kind == ProviderKind::local_file ? "local-file" : "http"},
                     {"languages", p.languages}};
}

namespace detail {

inline std::string file_url(const std::filesystem::path& p) {
  return "file://" + std::filesystem::absolute(p).lexically_normal().generic_string();
}

inline std::filesystem::path path_from_file_url(const std::string& url) {
  constexpr std::string_view kScheme = "file://";
  if (url.rfind(kScheme, 0) == 0) return std::filesystem::path(url.substr(kScheme.size()));
  return std::filesystem::path(url);
}

}  // namespace detail

/// Parses a provider config document (a JSON array). Relative local-file
/// paths are resolved against `base_dir`.
inline std::vector<ProviderConfig> parse_provider_config(std::string_view document,
                                                         const std::filesystem::path& base_dir) {
  nlohmann::json doc;
  if (text::trim(document).empty()) return {};
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("provider config is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::ConfigError, "provider config must be a JSON array");

  std::vector<ProviderConfig> out;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& entry = doc[i];
    const std::string where = "provider config entry " + std::to_string(i);
    ProviderConfig p;
    try {
      entry.at("id").get_to(p.id);
      p.display_name = entry.value("displayName", p.id);
      entry.at("baseUrl").get_to(p.base_url);
      const std::string kind = entry.value("kind", std::string("http"));
      if (kind == "local-file") {
        p.kind = ProviderKind::local_file;
      } else if (kind == "http") {
        p.kind = ProviderKind::http;
      } else {
        throw Error(ErrorCode::ConfigError, where + ": unknown kind '" + kind + "'");
      }
      p.languages = entry.value("languages", std::vector<std::string>{"en"});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ConfigError, where + ": " + e.what());
    }
    if (p.id.empty()) throw Error(ErrorCode::ConfigError, where + ": empty id");
    if (!ids.insert(p.id).second) throw Error(ErrorCode::ConfigError, "duplicate provider id '" + p.id + "'");
    if (p.kind == ProviderKind::local_file) {
      auto path = detail::path_from_file_url(p.base_url);
      if (path.is_relative()) path = base_dir / path;
      p.base_url = detail::file_url(path);
    } else if (!text::is_absolute_url(p.base_url)) {
      throw Error(ErrorCode::ConfigError, where + ": baseUrl '" + p.base_url + "' is not an absolute URL");
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<ProviderConfig> load_provider_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read provider config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_provider_config(ss.str(), path.parent_path());
}

/// The three online dictionaries of the original demo plus the bundled
/// local fixture dictionary.
inline std::vector<ProviderConfig> default_provider_config(const std::filesystem::path& local_dictionary) {
  return {
      {"freedicts", "FreeDicts", "http://www.dicts.info/", ProviderKind::http, {"en"}},
      {"memidex", "Memidex", "http://www.memidex.com/", ProviderKind::http, {"en"}},
      {"synonymsdict", "SynonymsDict", "http://www.synonym.com/", ProviderKind::http, {"en"}},
      {"local", "Local fixture dictionary", detail::file_url(local_dictionary), ProviderKind::local_file, {"en"}},
  };
}

/// In-memory JSON-lines dictionary: one {"term","language","definition",
/// "source"?} object per line. Terms match case-insensitively.
class LocalDictionary {
 public:
  static LocalDictionary load(const std::filesystem::path& path, const std::string& default_source) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read dictionary " + path.string());
    LocalDictionary dict;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty()) continue;
      auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::FormatError,
                    path.filename().string() + " line " + std::to_string(line_no) + ": " + why);
      };
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception&) {
        fail("not a JSON object");
      }
      if (!j.is_object()) fail("not a JSON object");
      DefinitionRecord r;
      const std::pair<const char*, std::string*> required[] = {
          {"term", &r.term}, {"language", &r.language}, {"definition", &r.definition}};
      for (auto [key, field] : required) {
        auto it = j.find(key);
        if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) {
          fail(std::string("missing or empty \"") + key + "\"");
        }
        *field = it->get<std::string>();
      }
      r.source = default_source;
      if (auto it = j.find("source"); it != j.end()) {
        if (!it->is_string() || !text::is_absolute_url(it->get<std::string>())) {
          fail("\"source\" must be an absolute URL");
        }
        r.source = it->get<std::string>();
      }
      dict.entries_[{text::to_lower(r.term), r.language}].push_back(std::move(r));
    }
    return dict;
  }

  std::vector<DefinitionRecord> lookup(const std::string& folded_term, const std::string& language) const {
    auto it = entries_.find({folded_term, language});
    return it == entries_.end() ? std::vector<DefinitionRecord>{} : it->second;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [key, records] : entries_) n += records.size();
    return n;
  }

 private:
  std::map<std::pair<std::string, std::string>, std::vector<DefinitionRecord>> entries_;
};

/// One JSON file per (provider, language, folded term).
class DefinitionCache {
 public:
  explicit DefinitionCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& directory() const { return dir_; }

  static std::string encode_component(std::string_view s) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (char c : s) {
      if (text::is_ascii_lower(c) || text::is_ascii_digit(c) || c == '-' || c == '.') {
        out.push_back(c);
      } else {
        auto b = static_cast<unsigned char>(c);
        out.push_back('%');
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0xF]);
      }
    }
    return out;
  }

  std::filesystem::path entry_path(const std::string& provider, const std::string& language,
                                   const std::string& folded_term) const {
    return dir_ / (encode_component(provider) + "_" + encode_component(language) + "_" +
                   encode_component(folded_term) + ".json");
  }

  std::optional<std::vector<DefinitionRecord>> get(const std::string& provider, const std::string& language,
                                                   const std::string& folded_term) const {
    std::ifstream in(entry_path(provider, language, folded_term), std::ios::binary);
    if (!in) return std::nullopt;
    try {
      return nlohmann::json::parse(in).get<std::vector<DefinitionRecord>>();
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;  // unreadable entry counts as a miss
    }
  }

  /// Writes through a unique temporary file and renames it into place, so a
  /// concurrent reader sees either the old entry, nothing, or the new one.
  void put(const std::string& provider, const std::string& language, const std::string& folded_term,
           const std::vector<DefinitionRecord>& records) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const auto target = entry_path(provider, language, folded_term);
    static std::atomic<unsigned long> counter{0};
    std::ostringstream tmp_name;
    tmp_name << target.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id())
             << "." << counter++;
    const auto tmp = dir_ / tmp_name.str();
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorCode::IoError, "cannot write cache entry " + tmp.string());
      out << nlohmann::json(records).dump();
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::IoError, "cannot write cache entry " + target.string());
    }
  }

 private:
  std::filesystem::path dir_;
};

/// Hook that queries a remote provider for a folded term. It may throw any
/// exception to signal the provider is unreachable.
using FetchHook = std::function<std::vector<DefinitionRecord>(const ProviderConfig&, const std::string& term,
                                                              const std::string& language)>;

class DictionaryGateway {
 public:
  explicit DictionaryGateway(std::vector<ProviderConfig> providers,
                             std::optional<std::filesystem::path> cache_dir = std::nullopt)
      : providers_(std::move(providers)) {
    std::set<std::string> ids;
    for (const auto& p : providers_) {
      if (!ids.insert(p.id).second) throw Error(ErrorCode::ConfigError, "duplicate provider id '" + p.id + "'");
    }
    if (cache_dir) cache_.emplace(*cache_dir);
  }

  const std::vector<ProviderConfig>& list_providers() const { return providers_; }

  const ProviderConfig& provider(const std::string& id) const {
    for (const auto& p : providers_) {
      if (p.id == id) return p;
    }
    throw Error(ErrorCode::UnknownProvider, "unknown provider '" + id + "'");
  }

  void set_fetch_hook(const std::string& provider_id, FetchHook hook) {
    provider(provider_id);
    std::lock_guard lock(mutex_);
    hooks_[provider_id] = std::move(hook);
  }

  /// Number of times a provider was actually consulted (cache misses).
  std::size_t provider_contacts() const { return contacts_.load(); }

  std::vector<DefinitionRecord> lookup(const std::string& provider_id, const std::string& term,
                                       const std::string& language) const {
    const ProviderConfig& p = provider(provider_id);
    if (text::trim(term).empty()) throw Error(ErrorCode::InvalidArgument, "empty lookup term");
    if (std::find(p.languages.begin(), p.languages.end(), language) == p.languages.end()) {
      throw Error(ErrorCode::UnsupportedLanguage,
                  "provider '" + p.id + "' does not support language '" + language + "'");
    }
    const std::string folded = text::to_lower(term);
    if (cache_) {
      if (auto hit = cache_->get(p.id, language, folded)) return *hit;
    }

    ++contacts_;
    std::vector<DefinitionRecord> records =
        p.kind == ProviderKind::local_file ? local_dictionary(p).lookup(folded, language) : fetch(p, folded, language);
    for (auto& r : records) {
      r.term = folded;
      r.language = language;
      if (r.source.empty()) r.source = p.base_url;
      if (r.definition.empty() || !text::is_absolute_url(r.source)) {
        throw Error(ErrorCode::ProviderUnavailable, "provider '" + p.id + "' returned an invalid record");
      }
    }
    if (cache_) cache_->put(p.id, language, folded, records);
    return records;
  }

 private:
  const LocalDictionary& local_dictionary(const ProviderConfig& p) const {
    std::lock_guard lock(mutex_);
    auto it = dictionaries_.find(p.id);
    if (it == dictionaries_.end()) {
      it = dictionaries_
               .emplace(p.id, std::make_shared<LocalDictionary>(
                                  LocalDictionary::load(detail::path_from_file_url(p.base_url), p.base_url)))
               .first;
    }
    return *it->second;
  }

  std::vector<DefinitionRecord> fetch(const ProviderConfig& p, const std::string& term,
                                      const std::string& language) const {
    FetchHook hook;
    {
      std::lock_guard lock(mutex_);
      if (auto it = hooks_.find(p.id); it != hooks_.end()) hook = it->second;
    }
    if (!hook) throw Error(ErrorCode::ProviderUnavailable, "provider '" + p.id + "' has no fetcher configured");
    try {
      return hook(p, term, language);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error(ErrorCode::ProviderUnavailable, "provider '" + p.id + "' unreachable: " + e.what());
    }
  }

  std::vector<ProviderConfig> providers_;
  std::optional<DefinitionCache> cache_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<LocalDictionary>> dictionaries_;
  std::map<std::string, FetchHook> hooks_;
  mutable std::atomic<std::size_t> contacts_{0};
};

}  // namespace codemeta
