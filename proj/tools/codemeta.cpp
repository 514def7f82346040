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

// codemeta: parse interfaces, look up definitions, annotate and export
// metadata scripts, rank services, and run the annotation service.
//
// Exit codes:
//   0 success                 4 UnknownProvider / UnsupportedLanguage
//   1 other failure           5 UnknownTarget / InvalidRequest / pick out of range
//   2 ParseError              6 output exists (use --force)
//   3 UnsupportedFileType     7 port in use
//                             8 ProviderUnavailable
//
// Errors are printed to stderr as a single line "error[<Code>]: <message>".

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "codemeta/codemeta.hpp"
#include "codemeta/service.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace codemeta;

namespace {

enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kUnsupportedFile = 3,
  kProvider = 4,
  kTarget = 5,
  kExists = 6,
  kPortInUse = 7,
  kUnavailable = 8,
};

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidIdentifier: return kParseError;
    case ErrorCode::UnsupportedFileType: return kUnsupportedFile;
    case ErrorCode::UnknownProvider:
    case ErrorCode::UnsupportedLanguage: return kProvider;
    case ErrorCode::UnknownTarget:
    case ErrorCode::InvalidRequest: return kTarget;
    case ErrorCode::ProviderUnavailable: return kUnavailable;
    default: return kFailure;
  }
}

struct CliFailure {
  int code;
  std::string name;
  std::string message;
};

int report(const std::string& name, const std::string& message, int code) {
  std::cerr << "error[" << name << "]: " << message << "\n";
  return code;
}

std::string format_score(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

struct DictionaryOptions {
  std::string config;
  std::string cache_dir;
};

std::string default_cache_dir() {
  if (const char* env = std::getenv("CODEMETA_CACHE_DIR")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME")) return (fs::path(xdg) / "codemeta").string();
  if (const char* home = std::getenv("HOME")) return (fs::path(home) / ".cache" / "codemeta").string();
  return ".codemeta-cache";
}

std::string default_config() {
  if (const char* env = std::getenv("CODEMETA_PROVIDERS")) return env;
  return CODEMETA_DEFAULT_CONFIG;
}

std::shared_ptr<DictionaryGateway> make_gateway(const DictionaryOptions& opts) {
  std::optional<fs::path> cache;
  if (!opts.cache_dir.empty()) cache = fs::path(opts.cache_dir);
  return std::make_shared<DictionaryGateway>(load_provider_config(opts.config), cache);
}

void write_file(const fs::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << content;
  }
  fs::rename(tmp, path);
}

// parse ---------------------------------------------------------------------

int cmd_parse(const std::string& file, bool json) {
  const InterfaceModel model = parse_file(file);
  if (json) {
    std::cout << nlohmann::json(model).dump(2) << "\n";
    return kOk;
  }
  std::cout << model.interface_name << " (" << to_string(model.source_type) << ", " << model.source_file << ")\n";
  for (const auto& m : model.methods) {
    std::cout << "  " << m.name << "(";
    for (std::size_t i = 0; i < m.parameters.size(); ++i) {
      std::cout << (i ? ", " : "") << m.parameters[i].name;
    }
    std::cout << ")  [" << join(m.tokens, " ") << "]\n";
    for (const auto& p : m.parameters) {
      std::cout << "    " << p.name << ": " << p.declared_type << "  [" << join(p.tokens, " ") << "]\n";
    }
  }
  const auto keywords = extract_keywords(model);
  std::cout << "keywords: " << join(std::vector<std::string>(keywords.begin(), keywords.end()), ", ") << "\n";
  return kOk;
}

// lookup --------------------------------------------------------------------

int cmd_lookup(const DictionaryOptions& dict, const std::string& term, const std::string& provider,
               const std::string& language, bool json) {
  auto gateway = make_gateway(dict);
  const auto records = gateway->lookup(provider, term, language);
  if (json) {
    std::cout << nlohmann::json(records).dump(2) << "\n";
    return kOk;
  }
  if (records.empty()) {
    std::cout << "no definitions for '" << term << "' in " << provider << " (" << language << ")\n";
    return kOk;
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::cout << "[" << i << "] " << records[i].term << " | " << records[i].language << " | " << records[i].source
              << "\n    " << records[i].definition << "\n";
  }
  return kOk;
}

// annotate ------------------------------------------------------------------

int cmd_annotate(const DictionaryOptions& dict, const std::string& script_path, const std::string& method,
                 const std::string& param, const std::string& term, const std::string& provider,
                 const std::string& language, std::size_t pick) {
  MetadataScript script = from_xml(read_text_file(script_path));
  AnnotationTarget target{method, param.empty() ? std::nullopt : std::optional<std::string>(param)};

  const auto* m = script.method(method);
  if (m == nullptr) throw Error(ErrorCode::UnknownTarget, "unknown method '" + method + "'");
  if (target.parameter_name && m->parameter(*target.parameter_name) == nullptr) {
    throw Error(ErrorCode::UnknownTarget, "unknown parameter '" + param + "' of method '" + method + "'");
  }

  auto gateway = make_gateway(dict);
  const auto records = gateway->lookup(provider, term, language);
  if (pick >= records.size()) {
    throw CliFailure{kTarget, "PickOutOfRange",
                     "--pick " + std::to_string(pick) + " but only " + std::to_string(records.size()) +
                         " definition(s) for '" + term + "'"};
  }
  const auto& r = records[pick];
  script.add_annotation(target, {r.term, r.language, r.source, r.definition});
  write_file(script_path, to_xml(script));

  const std::string label = target.parameter_name ? method + "." + *target.parameter_name : method;
  std::cout << label << " :: " << r.term << " | " << r.language << " | " << r.source << " | " << r.definition << "\n";
  return kOk;
}

// init / export -------------------------------------------------------------

int cmd_init(const std::string& source, const std::string& output, bool force) {
  const fs::path src(source);
  detect_source_type(src);
  InterfaceModel model = parse_file(src);
  model.source_file = src.filename().string();
  const fs::path out = output.empty() ? src.parent_path() / (src.stem().string() + ".metadata.xml") : fs::path(output);
  if (fs::exists(out) && !force) {
    throw CliFailure{kExists, "OutputExists", out.string() + " already exists (use --force to overwrite)"};
  }
  write_file(out, to_xml(new_script(model)));
  std::cout << out.string() << "\n";
  return kOk;
}

int cmd_export(const std::string& project_dir, const std::string& output) {
  const auto xml = to_xml(from_xml(read_text_file(fs::path(project_dir) / "script.xml")));
  if (output.empty()) {
    std::cout << xml;
  } else {
    write_file(output, xml);
  }
  return kOk;
}

// match ---------------------------------------------------------------------

std::string service_id_for(const fs::path& script) {
  std::string name = script.filename().string();
  for (std::string_view suffix : {".xml", ".metadata"}) {
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      name.resize(name.size() - suffix.size());
    }
  }
  return name;
}

int cmd_match(const std::string& request_path, const std::vector<std::string>& scripts, bool json) {
  const MatchRequest request = parse_match_request(read_text_file(request_path));
  validate_request(request);
  std::vector<Candidate> candidates;
  for (const auto& s : scripts) candidates.push_back({service_id_for(s), from_xml(read_text_file(s))});
  const auto reports = rank_services(request, candidates);
  if (json) {
    std::cout << nlohmann::json(reports).dump(2) << "\n";
    return kOk;
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    std::cout << i + 1 << ". " << r.service_id << "  total=" << format_score(r.total_score) << "\n";
    for (const auto& c : r.per_concept) {
      std::cout << "     " << c.concept_term << " -> " << c.matched_keyword.value_or("-") << " (" << to_string(c.kind)
                << ") name=" << format_score(c.name_score);
      if (c.definition_score) std::cout << " definition=" << format_score(*c.definition_score);
      std::cout << " combined=" << format_score(c.combined_score) << "\n";
    }
  }
  return kOk;
}

// serve ---------------------------------------------------------------------

httplib::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server != nullptr) g_server->stop();
}

int cmd_serve(const DictionaryOptions& dict, const std::string& host, int port, const std::string& data_dir,
              const std::string& ui_dir) {
  fs::create_directories(data_dir);
  DictionaryOptions service_dict = dict;
  service_dict.cache_dir = (fs::path(data_dir) / "cache").string();
  ServiceOptions options;
  options.data_dir = data_dir;
  if (!ui_dir.empty()) options.ui_dir = fs::path(ui_dir);
  AnnotationService service(make_gateway(service_dict), options);

  httplib::Server server;
  service.register_routes(server);
  if (!server.bind_to_port(host, port)) {
    throw CliFailure{kPortInUse, "PortInUse", "cannot bind " + host + ":" + std::to_string(port)};
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "codemeta: serving on http://" << host << ":" << port << " (data " << data_dir << ")\n";
  server.listen_after_bind();
  g_server = nullptr;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Annotate service interfaces with dictionary definitions and match services by meaning"};
  app.require_subcommand(1);

  DictionaryOptions dict{default_config(), default_cache_dir()};
  auto add_dictionary_options = [&](CLI::App* sub) {
    sub->add_option("--config", dict.config, "Provider config (JSON array)")->capture_default_str();
    sub->add_option("--cache-dir", dict.cache_dir, "Definition cache directory")->capture_default_str();
  };

  std::string file;
  bool json = false;
  auto* parse = app.add_subcommand("parse", "Parse a .java/.wsdl/.xml file and list methods and keywords");
  parse->add_option("file", file, "Source file")->required();
  parse->add_flag("--json", json, "Print the interface model as JSON");

  std::string term, provider, language = "en";
  auto* lookup = app.add_subcommand("lookup", "Look up a keyword in a dictionary provider");
  lookup->add_option("term", term, "Keyword")->required();
  lookup->add_option("--provider", provider, "Provider id")->required();
  lookup->add_option("--language", language, "Language code")->capture_default_str();
  lookup->add_flag("--json", json, "Print records as JSON");
  add_dictionary_options(lookup);

  std::string script_path, method, param;
  std::size_t pick = 0;
  auto* annotate = app.add_subcommand("annotate", "Append a dictionary definition to a method or parameter");
  annotate->add_option("script", script_path, "Metadata script (.xml)")->required();
  annotate->add_option("--method", method, "Method name")->required();
  annotate->add_option("--param", param, "Parameter name");
  annotate->add_option("--term", term, "Keyword to look up")->required();
  annotate->add_option("--provider", provider, "Provider id")->required();
  annotate->add_option("--language", language, "Language code")->capture_default_str();
  annotate->add_option("--pick", pick, "Index of the definition to attach")->capture_default_str();
  add_dictionary_options(annotate);

  std::string output;
  bool force = false;
  auto* init = app.add_subcommand("init", "Create an empty metadata script for a source file");
  init->add_option("source", file, "Source file")->required();
  init->add_option("-o,--output", output, "Output path (default <stem>.metadata.xml next to the source)");
  init->add_flag("--force", force, "Overwrite an existing script");

  std::string project_dir;
  auto* exp = app.add_subcommand("export", "Write the metadata script of a service project directory");
  exp->add_option("project-dir", project_dir, "Project directory")->required();
  exp->add_option("-o,--output", output, "Output path (default stdout)");

  std::string request_path;
  std::vector<std::string> scripts;
  auto* match = app.add_subcommand("match", "Rank services against a match request");
  match->add_option("--request", request_path, "Match request JSON")->required();
  match->add_option("scripts", scripts, "Candidate metadata scripts")->required();
  match->add_flag("--json", json, "Print reports as JSON");

  int port = 8080;
  std::string host = "127.0.0.1", data_dir = "codemeta-data", ui_dir;
  auto* serve = app.add_subcommand("serve", "Run the annotation HTTP service");
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--data-dir", data_dir, "Project data directory")->capture_default_str();
  serve->add_option("--ui-dir", ui_dir, "Directory of built UI assets to serve at /");
  add_dictionary_options(serve);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*parse) return cmd_parse(file, json);
    if (*lookup) return cmd_lookup(dict, term, provider, language, json);
    if (*annotate) return cmd_annotate(dict, script_path, method, param, term, provider, language, pick);
    if (*init) return cmd_init(file, output, force);
    if (*exp) return cmd_export(project_dir, output);
    if (*match) return cmd_match(request_path, scripts, json);
    if (*serve) return cmd_serve(dict, host, port, data_dir, ui_dir);
  } catch (const CliFailure& f) {
    return report(f.name, f.message, f.code);
  } catch (const Error& e) {
    return report(std::string(e.code_name()), e.what(), exit_code(e.code()));
  } catch (const std::exception& e) {
    return report("Failure", e.what(), kFailure);
  }
  return kFailure;
}
