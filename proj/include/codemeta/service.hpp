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

// HTTP front end for annotation projects.
//
// A project is one uploaded source file plus its metadata script. On disk
// each project is a directory:
//
//   <data-dir>/projects/<id>/project.json     id, filename, timestamps
//   <data-dir>/projects/<id>/source/<file>    the uploaded source, verbatim
//   <data-dir>/projects/<id>/script.xml       the current metadata script
//
// script.xml is the store itself; it is rewritten atomically after every
// accepted annotation.
//
// Endpoints (JSON unless noted):
//   POST /projects                           {"filename","content"} -> 201 summary
//   GET  /projects, GET /projects/:id        summaries
//   POST /projects/:id/annotations           {"target","annotation"} -> {"annotationCount"}
//   GET  /projects/:id/script?format=xml|display
//   GET  /dictionaries
//   GET  /dictionaries/:id/lookup?term=&language=
//   POST /match                              {"request","candidates"} -> [MatchReport]

#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "codemeta/dictionary.hpp"
#include "codemeta/error.hpp"
#include "codemeta/interface_parser.hpp"
#include "codemeta/matcher.hpp"
#include "codemeta/metadata_script.hpp"
#include "httplib.h"
#include "json.hpp"

namespace codemeta {

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedFileType: return 415;
    case ErrorCode::UnknownProvider: return 404;
    case ErrorCode::ProviderUnavailable: return 503;
    case ErrorCode::InvalidArgument: return 400;
    case ErrorCode::ParseError:
    case ErrorCode::UnsupportedLanguage:
    case ErrorCode::UnknownTarget:
    case ErrorCode::InvalidAnnotation:
    case ErrorCode::InvalidRequest:
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidIdentifier:
    case ErrorCode::FormatError: return 422;
    case ErrorCode::ConfigError:
    case ErrorCode::IoError: return 500;
  }
  return 500;
}

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string random_id() {
  static constexpr char kAlphabet[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::uniform_int_distribution<std::size_t> pick(0, sizeof(kAlphabet) - 2);
  std::string id(12, '0');
  for (char& c : id) c = kAlphabet[pick(rng)];
  return id;
}

inline void write_file_atomically(const std::filesystem::path& target, std::string_view content) {
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot replace " + target.string() + ": " + ec.message());
}

}  // namespace detail

struct Project {
  std::string id;
  std::string filename;
  InterfaceModel model;
  MetadataScript script;
  std::string created_at;
  std::string updated_at;
};

/// Snapshot-oriented project store. Writes to one project are serialized;
/// readers get a copy of the last completed write.
class ProjectStore {
 public:
  explicit ProjectStore(std::filesystem::path data_dir) : root_(std::move(data_dir) / "projects") {
    std::filesystem::create_directories(root_);
    load_existing();
  }

  Project create(const std::string& filename, const std::string& content) {
    const std::filesystem::path name = std::filesystem::path(filename).filename();
    if (name.empty() || name == "." || name == "..") {
      throw Error(ErrorCode::InvalidArgument, "invalid filename '" + filename + "'");
    }
    Project p;
    p.filename = name.string();
    p.model = parse_source(content, name);
    p.script = new_script(p.model);
    p.created_at = p.updated_at = detail::utc_timestamp();

    std::unique_lock lock(map_mutex_);
    do {
      p.id = detail::random_id();
    } while (projects_.count(p.id) != 0);
    const auto dir = root_ / p.id;
    std::filesystem::create_directories(dir / "source");
    detail::write_file_atomically(dir / "source" / p.filename, content);
    persist(p);
    auto slot = std::make_shared<Slot>();
    slot->project = p;
    projects_.emplace(p.id, std::move(slot));
    return p;
  }

  std::optional<Project> get(const std::string& id) const {
    auto slot = find(id);
    if (!slot) return std::nullopt;
    std::shared_lock lock(slot->mutex);
    return slot->project;
  }

  std::vector<Project> list() const {
    std::vector<std::shared_ptr<Slot>> slots;
    {
      std::shared_lock lock(map_mutex_);
      for (const auto& [id, slot] : projects_) slots.push_back(slot);
    }
    std::vector<Project> out;
    for (const auto& slot : slots) {
      std::shared_lock lock(slot->mutex);
      out.push_back(slot->project);
    }
    return out;
  }

  /// Appends and persists; returns the new annotation count, or nullopt when
  /// the project does not exist.
  std::optional<std::size_t> add_annotation(const std::string& id, const AnnotationTarget& target,
                                            const KeywordAnnotation& ann) {
    auto slot = find(id);
    if (!slot) return std::nullopt;
    std::unique_lock lock(slot->mutex);
    Project updated = slot->project;
    updated.script.add_annotation(target, ann);
    updated.updated_at = detail::utc_timestamp();
    persist(updated);
    slot->project = std::move(updated);
    return slot->project.script.annotation_count();
  }

 private:
  struct Slot {
    mutable std::shared_mutex mutex;
    Project project;
  };

  std::shared_ptr<Slot> find(const std::string& id) const {
    std::shared_lock lock(map_mutex_);
    auto it = projects_.find(id);
    return it == projects_.end() ? nullptr : it->second;
  }

  void persist(const Project& p) const {
    const auto dir = root_ / p.id;
    detail::write_file_atomically(dir / "script.xml", to_xml(p.script));
    const nlohmann::json meta{
        {"id", p.id}, {"filename", p.filename}, {"createdAt", p.created_at}, {"updatedAt", p.updated_at}};
    detail::write_file_atomically(dir / "project.json", meta.dump(2) + "\n");
  }

  void load_existing() {
    for (const auto& entry : std::filesystem::directory_iterator(root_)) {
      if (!entry.is_directory()) continue;
      try {
        const auto meta = nlohmann::json::parse(read_text_file(entry.path() / "project.json"));
        auto slot = std::make_shared<Slot>();
        Project& p = slot->project;
        p.id = meta.at("id").get<std::string>();
        p.filename = meta.at("filename").get<std::string>();
        p.created_at = meta.value("createdAt", "");
        p.updated_at = meta.value("updatedAt", "");
        p.model = parse_source(read_text_file(entry.path() / "source" / p.filename), p.filename);
        p.script = from_xml(read_text_file(entry.path() / "script.xml"));
        projects_.emplace(p.id, std::move(slot));
      } catch (const std::exception& e) {
        std::cerr << "warning: skipping project " << entry.path().filename().string() << ": " << e.what() << "\n";
      }
    }
  }

  std::filesystem::path root_;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> projects_;
};

inline nlohmann::json project_summary(const Project& p) {
  const auto keywords = extract_keywords(p.model);
  return nlohmann::json{{"id", p.id},
                        {"filename", p.filename},
                        {"model", p.model},
                        {"keywords", std::vector<std::string>(keywords.begin(), keywords.end())},
                        {"annotationCount", p.script.annotation_count()},
                        {"createdAt", p.created_at},
                        {"updatedAt", p.updated_at}};
}

struct ServiceOptions {
  std::filesystem::path data_dir;
  /// Directory of built UI assets served at "/", when present.
  std::optional<std::filesystem::path> ui_dir;
  MatchConfig match_config;
};

class AnnotationService {
 public:
  AnnotationService(std::shared_ptr<DictionaryGateway> gateway, ServiceOptions options)
      : gateway_(std::move(gateway)), options_(std::move(options)), store_(options_.data_dir) {}

  ProjectStore& store() { return store_; }
  const DictionaryGateway& gateway() const { return *gateway_; }

  void register_routes(httplib::Server& server) {
    server.Post("/projects", [this](const auto& req, auto& res) { handle(res, [&] { create_project(req, res); }); });
    server.Get("/projects", [this](const auto&, auto& res) {
      handle(res, [&] {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& p : store_.list()) out.push_back(project_summary(p));
        send_json(res, 200, out);
      });
    });
    server.Get("/projects/:id", [this](const auto& req, auto& res) {
      handle(res, [&] { send_json(res, 200, project_summary(require_project(req.path_params.at("id")))); });
    });
    server.Post("/projects/:id/annotations",
                [this](const auto& req, auto& res) { handle(res, [&] { add_annotation(req, res); }); });
    server.Get("/projects/:id/script", [this](const auto& req, auto& res) { handle(res, [&] { script(req, res); }); });
    server.Get("/dictionaries", [this](const auto&, auto& res) {
      handle(res, [&] { send_json(res, 200, nlohmann::json(gateway_->list_providers())); });
    });
    server.Get("/dictionaries/:id/lookup", [this](const auto& req, auto& res) { handle(res, [&] { lookup(req, res); }); });
    server.Post("/match", [this](const auto& req, auto& res) { handle(res, [&] { match(req, res); }); });
    if (options_.ui_dir && std::filesystem::is_directory(*options_.ui_dir)) {
      server.set_mount_point("/", options_.ui_dir->string());
    }
  }

 private:
  struct HttpError {
    int status;
    std::string code;
    std::string message;
  };

  static void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  }

  template <typename F>
  static void handle(httplib::Response& res, F&& body) {
    try {
      body();
    } catch (const HttpError& e) {
      send_json(res, e.status, {{"error", e.code}, {"message", e.message}});
    } catch (const Error& e) {
      send_json(res, http_status(e.code()), {{"error", std::string(e.code_name())}, {"message", e.what()}});
    } catch (const nlohmann::json::exception& e) {
      send_json(res, 400, {{"error", "BadRequest"}, {"message", e.what()}});
    } catch (const std::exception& e) {
      send_json(res, 500, {{"error", "Internal"}, {"message", e.what()}});
    }
  }

  static nlohmann::json json_body(const httplib::Request& req) {
    try {
      return nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::exception&) {
      throw HttpError{400, "BadRequest", "request body is not valid JSON"};
    }
  }

  Project require_project(const std::string& id) const {
    auto p = store_.get(id);
    if (!p) throw HttpError{404, "UnknownProject", "unknown project '" + id + "'"};
    return *p;
  }

  void create_project(const httplib::Request& req, httplib::Response& res) {
    const auto body = json_body(req);
    const auto filename = body.at("filename").get<std::string>();
    const auto content = body.at("content").get<std::string>();
    send_json(res, 201, project_summary(store_.create(filename, content)));
  }

  void add_annotation(const httplib::Request& req, httplib::Response& res) {
    const std::string& id = req.path_params.at("id");
    const auto body = json_body(req);
    const auto target = body.at("target").get<AnnotationTarget>();
    const auto annotation = body.at("annotation").get<KeywordAnnotation>();
    auto count = store_.add_annotation(id, target, annotation);
    if (!count) throw HttpError{404, "UnknownProject", "unknown project '" + id + "'"};
    send_json(res, 200, {{"annotationCount", *count}});
  }

  void script(const httplib::Request& req, httplib::Response& res) {
    const Project p = require_project(req.path_params.at("id"));
    const std::string format = req.has_param("format") ? req.get_param_value("format") : "xml";
    if (format == "xml") {
      res.status = 200;
      res.set_content(to_xml(p.script), "application/xml; charset=utf-8");
    } else if (format == "display") {
      res.status = 200;
      res.set_content(to_display(p.script), "text/plain; charset=utf-8");
    } else {
      throw HttpError{400, "UnknownFormat", "unknown format '" + format + "' (expected xml or display)"};
    }
  }

  void lookup(const httplib::Request& req, httplib::Response& res) {
    const std::string& provider = req.path_params.at("id");
    gateway_->provider(provider);
    if (!req.has_param("term")) throw HttpError{400, "BadRequest", "missing term parameter"};
    const std::string language = req.has_param("language") ? req.get_param_value("language") : "en";
    send_json(res, 200, nlohmann::json(gateway_->lookup(provider, req.get_param_value("term"), language)));
  }

  void match(const httplib::Request& req, httplib::Response& res) {
    const auto body = json_body(req);
    if (!body.is_object() || !body.contains("request")) {
      throw Error(ErrorCode::InvalidRequest, "body needs a \"request\" object");
    }
    const MatchRequest request = match_request_from_json(body["request"]);
    validate_request(request);

    std::vector<Candidate> candidates;
    for (const auto& c : body.value("candidates", nlohmann::json::array())) {
      if (c.contains("projectId")) {
        const auto id = c["projectId"].get<std::string>();
        Project p = require_project(id);
        candidates.push_back({c.value("serviceId", id), std::move(p.script)});
      } else if (c.contains("scriptXml")) {
        MetadataScript s = from_xml(c["scriptXml"].get<std::string>());
        std::string service_id = c.value("serviceId", s.interface_name());
        candidates.push_back({std::move(service_id), std::move(s)});
      } else {
        throw HttpError{400, "BadRequest", "each candidate needs \"projectId\" or \"scriptXml\""};
      }
    }
    send_json(res, 200, nlohmann::json(rank_services(request, candidates, options_.match_config)));
  }

  std::shared_ptr<DictionaryGateway> gateway_;
  ServiceOptions options_;
  ProjectStore store_;
};

}  // namespace codemeta
