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

// Definition generation: abstract-only and retrieval-augmented.

#ifndef DEJARGON_DEFINITIONS_DEFINITIONS_HPP
#define DEJARGON_DEFINITIONS_DEFINITIONS_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/core/text.hpp"
#include "dejargon/corpus/article.hpp"
#include "dejargon/jargon/annotation.hpp"
#include "dejargon/llm/gateway.hpp"
#include "dejargon/profiles/prompts.hpp"
#include "dejargon/retrieval/retrieval.hpp"

namespace dejargon::definitions {

using profiles::DefinitionMode;

/// Marker stored in `context_used` for abstract-only definitions.
inline constexpr const char* kAbstractContext = "abstract";

enum class Status { ok, no_context };

inline std::string to_string(Status s) { return s == Status::ok ? "ok" : "no_context"; }

inline Status status_from_string(const std::string& s) {
  if (s == "ok") return Status::ok;
  if (s == "no_context") return Status::no_context;
  throw ParseError(fmt::format("unknown definition status '{}'", s));
}

struct Definition {
  std::string arxiv_id;
  std::string term;
  DefinitionMode method = DefinitionMode::abstract_only;
  std::optional<std::string> text;
  std::vector<std::string> context_used;
  Status status = Status::ok;

  bool operator==(const Definition&) const = default;

  void validate() const {
    require((status == Status::ok) == text.has_value(), "definition: text present iff status ok");
    if (method == DefinitionMode::abstract_only) {
      require(context_used == std::vector<std::string>{kAbstractContext},
              "definition: abstract-only context must be the abstract marker");
      require(status == Status::ok, "definition: no_context only applies to rag");
    }
  }
};

struct DefineOptions {
  llm::ModelConfig model;
  profiles::PromptTemplates templates = profiles::PromptTemplates::defaults();
  /// Prepend the abstract to retrieved snippets in rag prompts.
  bool rag_includes_abstract = false;
  /// Receives one audit row per retrieval.
  std::function<void(const json&)> trace;
};

namespace detail {

/// A reply longer (in whitespace words) than the decoding budget in tokens
/// cannot have come from a call honoring max_tokens.
inline std::string checked_reply(std::string reply, const llm::ModelConfig& model, const std::string& term) {
  const std::string trimmed(text::trim(reply));
  if (trimmed.empty()) throw ParseError(fmt::format("empty definition for '{}'", term), reply);
  if (text::split_whitespace(trimmed).size() > static_cast<std::size_t>(model.max_tokens)) {
    throw ParseError(fmt::format("definition for '{}' exceeds the {}-token budget", term, model.max_tokens), reply);
  }
  return trimmed;
}

}  // namespace detail

inline Definition define_abstract_only(const std::string& term, const corpus::ArticleRecord& article,
                                       llm::Gateway& gateway, const DefineOptions& options = {}) {
  require(!text::trim(term).empty(), "define: empty term");
  const auto bundle = profiles::render_definition_prompt(term, article.abstract, DefinitionMode::abstract_only,
                                                         options.model, options.templates);
  Definition d{article.arxiv_id, term, DefinitionMode::abstract_only,
               detail::checked_reply(gateway.complete(bundle, options.model), options.model, term),
               {kAbstractContext}, Status::ok};
  d.validate();
  return d;
}

/// When nothing in the index clears `threshold`, returns a no_context
/// definition without calling the chat model.
inline Definition define_rag(const std::string& term, const corpus::ArticleRecord& article,
                             const retrieval::ChunkIndex& index, double threshold, std::size_t k,
                             llm::Gateway& gateway, const DefineOptions& options = {}) {
  require(!text::trim(term).empty(), "define: empty term");
  for (const auto& c : index.chunks()) {
    require(c.arxiv_id == article.arxiv_id,
            fmt::format("define_rag: index chunk {} does not belong to {}", c.id(), article.arxiv_id));
  }
  const auto results = retrieval::retrieve(term, index, threshold, k, gateway, options.model);
  if (options.trace) options.trace(retrieval::retrieval_trace(article.arxiv_id, term, threshold, k, results));

  Definition d{article.arxiv_id, term, DefinitionMode::rag, std::nullopt, {}, Status::no_context};
  if (results.empty()) return d;

  std::vector<std::string> snippets;
  if (options.rag_includes_abstract) snippets.push_back(article.abstract);
  for (const auto& r : results) {
    snippets.push_back(r.chunk->text);
    d.context_used.push_back(r.chunk->id());
  }
  const auto bundle = profiles::render_definition_prompt(term, profiles::join_snippets(snippets), DefinitionMode::rag,
                                                         options.model, options.templates);
  d.text = detail::checked_reply(gateway.complete(bundle, options.model), options.model, term);
  d.status = Status::ok;
  d.validate();
  return d;
}

inline void to_json(json& j, const Definition& d) {
  j = json{{"arxiv_id", d.arxiv_id},
           {"term", d.term},
           {"method", profiles::to_string(d.method)},
           {"text", d.text ? json(*d.text) : json(nullptr)},
           {"context_used", d.context_used},
           {"status", to_string(d.status)}};
}

inline void from_json(const json& j, Definition& d) {
  d.arxiv_id = j.at("arxiv_id").get<std::string>();
  d.term = j.at("term").get<std::string>();
  d.method = profiles::definition_mode_from_string(j.at("method").get<std::string>());
  d.text = optional_field<std::string>(j, "text");
  d.context_used = j.value("context_used", std::vector<std::string>{});
  d.status = status_from_string(j.at("status").get<std::string>());
  d.validate();
}

inline std::vector<Definition> load_definitions(const fs::path& path) {
  std::vector<Definition> out;
  for (const auto& row : read_jsonl(path)) {
    try {
      out.push_back(row.get<Definition>());
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("{}: bad definition: {}", path.string(), e.what()), row.dump());
    }
  }
  return out;
}

inline void save_definitions(const fs::path& path, const std::vector<Definition>& defs) {
  std::vector<json> rows;
  for (const auto& d : defs) rows.emplace_back(d);
  write_jsonl(path, rows);
}

/// Lookup key: definitions are per (article, normalized term, method).
inline std::string definition_key(const std::string& arxiv_id, const std::string& term, DefinitionMode method) {
  return arxiv_id + "\x1f" + jargon::normalize_term(term) + "\x1f" + profiles::to_string(method);
}

}  // namespace dejargon::definitions

#endif  // DEJARGON_DEFINITIONS_DEFINITIONS_HPP
