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

#include "codemeta/dictionary.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

namespace codemeta {
namespace {

namespace fs = std::filesystem;

const std::string kVehicleDefinition = "a car, lorry, bus, etc., for transporting people or goods on land";

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("codemeta-dict-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

fs::path write(const fs::path& p, const std::string& content) {
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

DictionaryGateway shipped_gateway(const std::optional<fs::path>& cache = std::nullopt) {
  return DictionaryGateway(load_provider_config(std::string(CODEMETA_DATA_DIR) + "/providers.json"), cache);
}

TEST(ProviderConfig, ShippedConfigListsFourProvidersInOrder) {
  const auto gateway = shipped_gateway();
  std::vector<std::string> ids;
  for (const auto& p : gateway.list_providers()) ids.push_back(p.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"freedicts", "memidex", "synonymsdict", "local"}));
  EXPECT_EQ(gateway.provider("freedicts").base_url, "http://www.dicts.info/");
  EXPECT_EQ(gateway.provider("memidex").base_url, "http://www.memidex.com/");
  EXPECT_EQ(gateway.provider("synonymsdict").base_url, "http://www.synonym.com/");
  EXPECT_EQ(gateway.provider("local").kind, ProviderKind::local_file);
  EXPECT_EQ(gateway.provider("local").languages, (std::vector<std::string>{"en"}));
}

TEST(ProviderConfig, BuiltInDefaultMatchesShippedFile) {
  const auto shipped = load_provider_config(std::string(CODEMETA_DATA_DIR) + "/providers.json");
  EXPECT_EQ(default_provider_config(std::string(CODEMETA_DATA_DIR) + "/dictionary.en.jsonl"), shipped);
}

TEST(ProviderConfig, EmptyConfigFile) {
  EXPECT_TRUE(parse_provider_config("", ".").empty());
  EXPECT_TRUE(parse_provider_config("[]", ".").empty());
}

TEST(ProviderConfig, DuplicateIdIsConfigError) {
  EXPECT_EQ(error_of([] {
              parse_provider_config(R"([{"id":"a","baseUrl":"http://a/"},{"id":"a","baseUrl":"http://b/"}])", ".");
            }),
            ErrorCode::ConfigError);
  EXPECT_EQ(error_of([] {
              DictionaryGateway({{"a", "A", "http://a/", ProviderKind::http, {"en"}},
                                 {"a", "A", "http://b/", ProviderKind::http, {"en"}}});
            }),
            ErrorCode::ConfigError);
}

TEST(ProviderConfig, MalformedEntries) {
  EXPECT_EQ(error_of([] { parse_provider_config("{}", "."); }), ErrorCode::ConfigError);
  EXPECT_EQ(error_of([] { parse_provider_config(R"([{"baseUrl":"http://a/"}])", "."); }), ErrorCode::ConfigError);
  EXPECT_EQ(error_of([] { parse_provider_config(R"([{"id":"a","baseUrl":"not a url"}])", "."); }),
            ErrorCode::ConfigError);
  EXPECT_EQ(error_of([] { parse_provider_config(R"([{"id":"a","baseUrl":"http://a/","kind":"ftp"}])", "."); }),
            ErrorCode::ConfigError);
}

TEST(Lookup, VehicleFromLocalFixture) {
  const auto gateway = shipped_gateway();
  const auto records = gateway.lookup("local", "vehicle", "en");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].term, "vehicle");
  EXPECT_EQ(records[0].language, "en");
  EXPECT_EQ(records[0].definition, kVehicleDefinition);
  EXPECT_EQ(records[0].source, gateway.provider("local").base_url);
  EXPECT_TRUE(text::is_absolute_url(records[0].source));
}

TEST(Lookup, CaseInsensitive) {
  const auto gateway = shipped_gateway();
  EXPECT_EQ(gateway.lookup("local", "Vehicle", "en"), gateway.lookup("local", "vehicle", "en"));
  EXPECT_EQ(gateway.lookup("local", "SERVICE", "en"), gateway.lookup("local", "service", "en"));
}

TEST(Lookup, MultipleSensesInFileOrder) {
  const auto records = shipped_gateway().lookup("local", "service", "en");
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].definition, "a routine inspection and maintenance of a vehicle");
  EXPECT_EQ(records[1].definition, "help or advice");
}

TEST(Lookup, UnknownTermIsEmptyNotError) { EXPECT_TRUE(shipped_gateway().lookup("local", "zzxqv", "en").empty()); }

TEST(Lookup, Errors) {
  const auto gateway = shipped_gateway();
  EXPECT_EQ(error_of([&] { gateway.lookup("nope", "car", "en"); }), ErrorCode::UnknownProvider);
  EXPECT_EQ(error_of([&] { gateway.lookup("local", "car", "fr"); }), ErrorCode::UnsupportedLanguage);
  EXPECT_EQ(error_of([&] { gateway.lookup("local", "", "en"); }), ErrorCode::InvalidArgument);
  // Live sites ship without a fetcher: cold cache means unavailable.
  EXPECT_EQ(error_of([&] { gateway.lookup("memidex", "car", "en"); }), ErrorCode::ProviderUnavailable);
}

TEST(LocalDictionary, LoadsRecordsAndDefaultsSource) {
  TempDir dir;
  const auto file = write(dir.path() / "d.jsonl",
                          "{\"term\":\"service\",\"language\":\"en\",\"definition\":\"help or advice\"}\n"
                          "\n"
                          "{\"term\":\"Car\",\"language\":\"en\",\"definition\":\"a road vehicle\","
                          "\"source\":\"http://www.memidex.com/\"}\r\n"
                          "{\"term\":\"service\",\"language\":\"en\",\"definition\":\"second sense\"}\n");
  const auto dict = LocalDictionary::load(file, "file:///fallback");
  EXPECT_EQ(dict.size(), 3u);
  const auto service = dict.lookup("service", "en");
  ASSERT_EQ(service.size(), 2u);
  EXPECT_EQ(service[0].definition, "help or advice");
  EXPECT_EQ(service[0].source, "file:///fallback");
  EXPECT_EQ(service[1].definition, "second sense");
  ASSERT_EQ(dict.lookup("car", "en").size(), 1u);
  EXPECT_EQ(dict.lookup("car", "en")[0].source, "http://www.memidex.com/");
}

TEST(LocalDictionary, MissingDefinitionNamesLine) {
  TempDir dir;
  const auto file = write(dir.path() / "d.jsonl",
                          "{\"term\":\"a\",\"language\":\"en\",\"definition\":\"x\"}\n"
                          "{\"term\":\"b\",\"language\":\"en\"}\n");
  try {
    LocalDictionary::load(file, "file:///x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FormatError);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(LocalDictionary, MalformedLineAndMissingFile) {
  TempDir dir;
  const auto file = write(dir.path() / "d.jsonl", "{not json\n");
  EXPECT_EQ(error_of([&] { LocalDictionary::load(file, "file:///x"); }), ErrorCode::FormatError);
  EXPECT_EQ(error_of([&] { LocalDictionary::load(dir.path() / "absent.jsonl", "file:///x"); }), ErrorCode::IoError);
}

TEST(LocalDictionary, NonEnglishCodesRoundTrip) {
  TempDir dir;
  write(dir.path() / "fr.jsonl",
        "{\"term\":\"Véhicule\",\"language\":\"fr\",\"definition\":\"engin de transport terrestre\"}\n");
  write(dir.path() / "providers.json",
        R"([{"id":"fr","displayName":"French","baseUrl":"fr.jsonl","kind":"local-file","languages":["fr"]}])");
  DictionaryGateway gateway(load_provider_config(dir.path() / "providers.json"), dir.path() / "cache");
  const auto records = gateway.lookup("fr", "Véhicule", "fr");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].language, "fr");
  EXPECT_EQ(records[0].term, "véhicule");
  EXPECT_EQ(gateway.lookup("fr", "VéHICULE", "fr"), records);
}

TEST(Cache, SecondLookupServedWithoutProviderContact) {
  TempDir dir;
  const auto gateway = shipped_gateway(dir.path());
  const auto first = gateway.lookup("local", "vehicle", "en");
  EXPECT_EQ(gateway.provider_contacts(), 1u);
  const auto second = gateway.lookup("local", "VEHICLE", "en");
  EXPECT_EQ(gateway.provider_contacts(), 1u);
  EXPECT_EQ(first, second);

  // Empty results are cached too.
  EXPECT_TRUE(gateway.lookup("local", "zzxqv", "en").empty());
  EXPECT_TRUE(gateway.lookup("local", "zzxqv", "en").empty());
  EXPECT_EQ(gateway.provider_contacts(), 2u);

  // One file per key, inspectable.
  EXPECT_TRUE(fs::exists(DefinitionCache(dir.path()).entry_path("local", "en", "vehicle")));
}

TEST(Cache, FilenameEncodingIsInjective) {
  DefinitionCache cache("/c");
  EXPECT_NE(cache.entry_path("a_b", "en", "c"), cache.entry_path("a", "b_en", "c"));
  EXPECT_NE(cache.entry_path("p", "en", "a/b"), cache.entry_path("p", "en", "a%2Fb"));
  EXPECT_EQ(cache.entry_path("p", "en", "../x").parent_path(), fs::path("/c"));
}

TEST(Cache, WarmCacheServesUnreachableHttpProvider) {
  TempDir dir;
  std::vector<ProviderConfig> providers{{"web", "Web", "http://dict.example/", ProviderKind::http, {"en"}}};
  int calls = 0;
  {
    DictionaryGateway gateway(providers, dir.path());
    gateway.set_fetch_hook("web", [&](const ProviderConfig&, const std::string& term, const std::string& lang) {
      ++calls;
      return std::vector<DefinitionRecord>{{term, lang, "", "fetched " + term}};
    });
    const auto records = gateway.lookup("web", "Garage", "en");
    ASSERT_EQ(records.size(), 1u);
    EXPECT_EQ(records[0].term, "garage");
    EXPECT_EQ(records[0].source, "http://dict.example/");
  }
  DictionaryGateway offline(providers, dir.path());
  offline.set_fetch_hook("web", [](const ProviderConfig&, const std::string&, const std::string&)
                                    -> std::vector<DefinitionRecord> { throw std::runtime_error("no route"); });
  EXPECT_EQ(offline.lookup("web", "garage", "en").at(0).definition, "fetched garage");
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(error_of([&] { offline.lookup("web", "other", "en"); }), ErrorCode::ProviderUnavailable);
}

TEST(Cache, ConcurrentColdLookupsAgree) {
  TempDir dir;
  const auto gateway = shipped_gateway(dir.path());
  std::vector<std::thread> threads;
  std::vector<std::vector<DefinitionRecord>> results(16);
  for (std::size_t i = 0; i < results.size(); ++i) {
    threads.emplace_back([&, i] { results[i] = gateway.lookup("local", i % 2 ? "Service" : "service", "en"); });
  }
  for (auto& t : threads) t.join();
  for (const auto& r : results) EXPECT_EQ(r, results[0]);
  EXPECT_EQ(gateway.lookup("local", "service", "en"), results[0]);
  for (const auto& entry : fs::directory_iterator(dir.path())) {
    EXPECT_EQ(entry.path().extension(), ".json") << entry.path();  // no stray temp files
  }
}

}  // namespace
}  // namespace codemeta
