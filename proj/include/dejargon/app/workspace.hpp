// Copyright 2026 The Dejargon Authors.
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

// On-disk layout shared by the CLI and the server, and the settings file
// that lives at its root.

#ifndef DEJARGON_APP_WORKSPACE_HPP
#define DEJARGON_APP_WORKSPACE_HPP

#include <cstdlib>
#include <memory>
#include <optional>
#include <string>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/http.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/corpus/arxiv_client.hpp"
#include "dejargon/llm/config.hpp"
#include "dejargon/llm/gateway.hpp"
#include "dejargon/profiles/prompts.hpp"
#include "dejargon/retrieval/retrieval.hpp"

namespace dejargon::app {

/// <root>/
///   dejargon.json                 settings (optional)
///   corpus/                       article store + manifest.json
///   profiles/<reader>.json
///   annotations/{model,human}.jsonl
///   index/<sha256(id)>.json       chunks with vectors
///   definitions/definitions.jsonl
///   pairs/pairs.jsonl             annotator-facing
///   pairs/pairs.key.json          unblinding key
///   judgments/judgments.jsonl
///   traces/retrieval.jsonl
///   results/*.csv
///   fixtures/llm/                 replay cache (default location)
struct Workspace {
  fs::path root = ".";

  fs::path settings_file() const { return root / "dejargon.json"; }
  fs::path corpus_dir() const { return root / "corpus"; }
  fs::path profiles_dir() const { return root / "profiles"; }
  fs::path annotations_file(const std::string& source) const { return root / "annotations" / (source + ".jsonl"); }
  fs::path index_dir() const { return root / "index"; }
  fs::path definitions_file() const { return root / "definitions" / "definitions.jsonl"; }
  fs::path pairs_file() const { return root / "pairs" / "pairs.jsonl"; }
  fs::path key_file() const { return root / "pairs" / "pairs.key.json"; }
  fs::path judgments_file() const { return root / "judgments" / "judgments.jsonl"; }
  fs::path trace_file() const { return root / "traces" / "retrieval.jsonl"; }
  fs::path results_dir() const { return root / "results"; }

  /// Relative paths in settings resolve against the workspace root.
  fs::path resolve(const fs::path& p) const { return p.is_absolute() ? p : root / p; }
};

struct Settings {
  llm::ModelConfig model;
  std::string api_base_url = "https://api.openai.com/v1";
  /// Environment variable holding the API key; the key itself never goes in
  /// the settings file.
  std::string api_key_env = "OPENAI_API_KEY";
  llm::Mode mode = llm::Mode::replay;
  fs::path fixtures_dir = "fixtures/llm";
  int max_in_flight = 4;
  int max_attempts = 5;
  retrieval::ChunkingConfig chunking;
  retrieval::RetrievalConfig retrieval;
  profiles::PersonalizationMode personalization = profiles::PersonalizationMode::description;
  std::optional<fs::path> templates_dir;
  bool rag_includes_abstract = false;
  corpus::DateField date_field = corpus::DateField::updated;
  std::size_t page_size_limit = 50;

  void validate() const {
    model.validate();
    chunking.validate();
    require(retrieval.threshold >= -1.0 && retrieval.threshold <= 1.0, "settings: threshold must be in [-1, 1]");
    require(retrieval.k >= 1, "settings: k must be positive");
    require(max_in_flight >= 1, "settings: max_in_flight must be positive");
    require(max_attempts >= 1, "settings: max_attempts must be positive");
    require(page_size_limit >= 1, "settings: page_size_limit must be positive");
  }
};

inline std::string to_string(llm::Mode m) {
  switch (m) {
    case llm::Mode::live: return "live";
    case llm::Mode::record: return "record";
    case llm::Mode::replay: return "replay";
  }
  return "replay";
}

inline std::string to_string(profiles::PersonalizationMode m) {
  switch (m) {
    case profiles::PersonalizationMode::description: return "description";
    case profiles::PersonalizationMode::ratings: return "ratings";
    case profiles::PersonalizationMode::description_and_ratings: return "description_and_ratings";
  }
  return "description";
}

inline profiles::PersonalizationMode personalization_from_string(const std::string& s) {
  if (s == "description") return profiles::PersonalizationMode::description;
  if (s == "ratings") return profiles::PersonalizationMode::ratings;
  if (s == "description_and_ratings") return profiles::PersonalizationMode::description_and_ratings;
  throw PreconditionError(fmt::format("unknown personalization mode '{}'", s));
}

inline corpus::DateField date_field_from_string(const std::string& s) {
  if (s == "updated") return corpus::DateField::updated;
  if (s == "submitted") return corpus::DateField::submitted;
  throw PreconditionError(fmt::format("unknown date field '{}' (updated|submitted)", s));
}

inline json settings_to_json(const Settings& s) {
  json j{{"model", s.model},
         {"api_base_url", s.api_base_url},
         {"api_key_env", s.api_key_env},
         {"mode", to_string(s.mode)},
         {"fixtures_dir", s.fixtures_dir.string()},
         {"max_in_flight", s.max_in_flight},
         {"max_attempts", s.max_attempts},
         {"chunking", {{"size", s.chunking.size}, {"overlap", s.chunking.overlap}}},
         {"retrieval", {{"threshold", s.retrieval.threshold}, {"k", s.retrieval.k}}},
         {"personalization", to_string(s.personalization)},
         {"rag_includes_abstract", s.rag_includes_abstract},
         {"date_field", s.date_field == corpus::DateField::updated ? "updated" : "submitted"},
         {"page_size_limit", s.page_size_limit}};
  if (s.templates_dir) j["templates_dir"] = s.templates_dir->string();
  return j;
}

inline Settings settings_from_json(const json& j) {
  Settings s;
  try {
    if (j.contains("model")) s.model = j.at("model").get<llm::ModelConfig>();
    s.api_base_url = j.value("api_base_url", s.api_base_url);
    s.api_key_env = j.value("api_key_env", s.api_key_env);
    if (j.contains("mode")) s.mode = llm::mode_from_string(j.at("mode").get<std::string>());
    s.fixtures_dir = j.value("fixtures_dir", s.fixtures_dir.string());
    s.max_in_flight = j.value("max_in_flight", s.max_in_flight);
    s.max_attempts = j.value("max_attempts", s.max_attempts);
    if (const auto c = j.find("chunking"); c != j.end()) {
      s.chunking.size = c->value("size", s.chunking.size);
      s.chunking.overlap = c->value("overlap", s.chunking.overlap);
    }
    if (const auto r = j.find("retrieval"); r != j.end()) {
      s.retrieval.threshold = r->value("threshold", s.retrieval.threshold);
      s.retrieval.k = r->value("k", s.retrieval.k);
    }
    if (j.contains("personalization")) {
      s.personalization = personalization_from_string(j.at("personalization").get<std::string>());
    }
    if (j.contains("templates_dir")) s.templates_dir = j.at("templates_dir").get<std::string>();
    s.rag_includes_abstract = j.value("rag_includes_abstract", s.rag_includes_abstract);
    if (j.contains("date_field")) s.date_field = date_field_from_string(j.at("date_field").get<std::string>());
    s.page_size_limit = j.value("page_size_limit", s.page_size_limit);
  } catch (const json::exception& e) {
    throw ParseError(fmt::format("settings: {}", e.what()), j.dump());
  }
  s.validate();
  return s;
}

/// Defaults when the workspace has no settings file.
inline Settings load_settings(const Workspace& ws) {
  if (!fs::exists(ws.settings_file())) return Settings{};
  return settings_from_json(read_json_file(ws.settings_file()));
}

inline profiles::PromptTemplates load_templates(const Workspace& ws, const Settings& s) {
  return s.templates_dir ? profiles::PromptTemplates::load(ws.resolve(*s.templates_dir))
                         : profiles::PromptTemplates::defaults();
}

/// Replay never touches the network: its transport refuses every request.
inline std::shared_ptr<llm::Gateway> make_gateway(const Workspace& ws, const Settings& s,
                                                  std::shared_ptr<http::Transport> transport = nullptr) {
  llm::GatewayConfig config;
  config.base_url = s.api_base_url;
  config.mode = s.mode;
  config.fixtures_dir = ws.resolve(s.fixtures_dir);
  config.max_in_flight = s.max_in_flight;
  config.max_attempts = s.max_attempts;
  if (const char* key = std::getenv(s.api_key_env.c_str())) config.api_key = key;
  if (!transport) {
    if (s.mode == llm::Mode::replay) {
      transport = std::make_shared<llm::NoNetworkTransport>();
    } else {
      transport = std::make_shared<http::LiveTransport>();
    }
  }
  return std::make_shared<llm::Gateway>(std::move(config), std::move(transport));
}

}  // namespace dejargon::app

#endif  // DEJARGON_APP_WORKSPACE_HPP
