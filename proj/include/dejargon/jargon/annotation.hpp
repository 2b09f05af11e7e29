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

// Jargon annotations: normalization, model-reply parsing, and grounding of
// terms to character spans in the abstract.

#ifndef DEJARGON_JARGON_ANNOTATION_HPP
#define DEJARGON_JARGON_ANNOTATION_HPP

#include <cstddef>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/core/text.hpp"
#include "dejargon/corpus/article.hpp"
#include "dejargon/llm/gateway.hpp"
#include "dejargon/profiles/profile.hpp"
#include "dejargon/profiles/prompts.hpp"

namespace dejargon::jargon {

enum class Source { human, model };

inline std::string to_string(Source s) { return s == Source::human ? "human" : "model"; }

inline Source source_from_string(std::string_view s) {
  if (s == "human") return Source::human;
  if (s == "model") return Source::model;
  throw ParseError(fmt::format("unknown annotation source '{}'", s));
}

/// Case-folds (ASCII), collapses whitespace, and strips punctuation around
/// the whole term. Interior punctuation such as hyphens survives.
inline std::string normalize_term(std::string_view term) {
  const std::string folded = text::to_lower_ascii(text::collapse_whitespace(term));
  return std::string(text::trim(text::strip_punctuation(folded)));
}

/// Words in a term; a hyphenated compound is one word.
inline std::size_t word_count(std::string_view term) {
  return text::split_whitespace(normalize_term(term)).size();
}

struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Span&) const = default;
};

struct GroundedTerm {
  std::string term;
  Span span;

  bool operator==(const GroundedTerm&) const = default;
};

/// Jargon terms one reader (human) or the model attributed to one abstract.
/// `terms` holds every distinct term in order of appearance in the source;
/// each is either in `spans` (found in the abstract) or in `unmatched`.
struct JargonAnnotation {
  std::string arxiv_id;
  std::string reader_id;
  Source source = Source::model;
  std::vector<std::string> terms;
  std::vector<GroundedTerm> spans;
  std::vector<std::string> unmatched;

  bool operator==(const JargonAnnotation&) const = default;
};

/// First occurrence of `term` in `abstract`, as a run of whitespace-separated
/// tokens whose text normalizes to the same string as the term. The span is
/// trimmed of the surrounding punctuation of its first and last tokens.
inline std::optional<Span> ground_term(std::string_view abstract, std::string_view term) {
  const std::string target = normalize_term(term);
  if (target.empty()) return std::nullopt;
  const std::size_t width = text::split_whitespace(target).size();

  struct Token {
    std::size_t start;
    std::size_t end;
  };
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < abstract.size();) {
    while (i < abstract.size() && text::is_ascii_space(abstract[i])) ++i;
    const std::size_t start = i;
    while (i < abstract.size() && !text::is_ascii_space(abstract[i])) ++i;
    if (i > start) tokens.push_back({start, i});
  }
  for (std::size_t first = 0; first + width <= tokens.size(); ++first) {
    const std::size_t last = first + width - 1;
    const std::string_view head = abstract.substr(tokens[first].start, tokens[first].end - tokens[first].start);
    const std::string_view tail = abstract.substr(tokens[last].start, tokens[last].end - tokens[last].start);
    const std::string_view head_core = text::strip_punctuation(head);
    const std::string_view tail_core = text::strip_punctuation(tail);
    if (head_core.empty() || tail_core.empty()) continue;
    const std::size_t start = tokens[first].start + static_cast<std::size_t>(head_core.data() - head.data());
    const std::size_t end =
        tokens[last].start + static_cast<std::size_t>(tail_core.data() - tail.data()) + tail_core.size();
    if (start >= end) continue;
    if (normalize_term(abstract.substr(start, end - start)) == target) return Span{start, end};
  }
  return std::nullopt;
}

/// Builds an annotation from raw terms: drops blanks, deduplicates under
/// normalization (first spelling wins), and grounds each term.
inline JargonAnnotation make_annotation(std::string arxiv_id, std::string reader_id, Source source,
                                        const std::vector<std::string>& raw_terms, std::string_view abstract) {
  JargonAnnotation a{std::move(arxiv_id), std::move(reader_id), source, {}, {}, {}};
  std::set<std::string> seen;
  for (const auto& raw : raw_terms) {
    const std::string term = text::collapse_whitespace(raw);
    const std::string key = normalize_term(term);
    if (key.empty() || !seen.insert(key).second) continue;
    a.terms.push_back(term);
    if (const auto span = ground_term(abstract, term)) {
      a.spans.push_back({term, *span});
    } else {
      a.unmatched.push_back(term);
    }
  }
  return a;
}

struct ReplyParseOptions {
  /// Longer lines read as prose rather than terms.
  std::size_t max_words_per_term = 12;
};

/// Parses an identification reply: one term per line, list markers
/// ("1.", "2)", "-", "*", bullets) and wrapping quotes tolerated. The
/// sentinel alone means no jargon.
inline std::vector<std::string> parse_identification_reply(const std::string& reply,
                                                           const ReplyParseOptions& options = {}) {
  static const std::regex kMarker(R"(^\s*(?:\d+[.)]|[-*+]|\xE2\x80\xA2)\s+)");
  const std::string_view trimmed = text::trim(reply);
  if (trimmed.empty()) throw ParseError("identification reply is empty", reply);
  if (trimmed == profiles::kNoJargonSentinel) return {};

  std::vector<std::string> terms;
  for (std::string line : text::split(trimmed, '\n')) {
    line = std::regex_replace(line, kMarker, "", std::regex_constants::format_first_only);
    std::string term(text::trim(line));
    if (term.empty()) continue;
    if (term.find(profiles::kNoJargonSentinel) != std::string::npos) {
      throw ParseError("identification reply mixes the no-jargon sentinel with terms", reply);
    }
    if (term.size() >= 2 && (term.front() == '"' || term.front() == '\'') && term.back() == term.front()) {
      term = term.substr(1, term.size() - 2);
    }
    if (text::split_whitespace(term).size() > options.max_words_per_term || term.back() == ':') {
      throw ParseError(fmt::format("identification reply line is not a term: '{}'", term), reply);
    }
    terms.push_back(term);
  }
  if (terms.empty()) throw ParseError("identification reply has no terms", reply);
  return terms;
}

struct IdentifyOptions {
  llm::ModelConfig model;
  profiles::PersonalizationMode personalization = profiles::PersonalizationMode::description;
  profiles::PromptTemplates templates = profiles::PromptTemplates::defaults();
};

inline JargonAnnotation identify_jargon(const profiles::ReaderProfile& profile, const corpus::ArticleRecord& article,
                                        llm::Gateway& gateway, const IdentifyOptions& options = {}) {
  require(!text::trim(article.abstract).empty(), fmt::format("article {} has an empty abstract", article.arxiv_id));
  const auto bundle = profiles::render_identification_prompt(profile, article.abstract, options.model,
                                                             options.personalization, options.templates);
  const std::string reply = gateway.complete(bundle, options.model);
  return make_annotation(article.arxiv_id, profile.reader_id, Source::model, parse_identification_reply(reply),
                         article.abstract);
}

inline void to_json(json& j, const JargonAnnotation& a) {
  json spans = json::array();
  for (const auto& g : a.spans) spans.push_back(json{{"term", g.term}, {"start", g.span.start}, {"end", g.span.end}});
  j = json{{"arxiv_id", a.arxiv_id}, {"reader_id", a.reader_id}, {"source", to_string(a.source)},
           {"terms", a.terms},       {"spans", spans},             {"unmatched", a.unmatched}};
}

inline void from_json(const json& j, JargonAnnotation& a) {
  a.arxiv_id = j.at("arxiv_id").get<std::string>();
  a.reader_id = j.at("reader_id").get<std::string>();
  a.source = source_from_string(j.at("source").get<std::string>());
  a.terms = j.at("terms").get<std::vector<std::string>>();
  a.spans.clear();
  for (const auto& s : j.value("spans", json::array())) {
    a.spans.push_back({s.at("term").get<std::string>(), {s.at("start").get<std::size_t>(), s.at("end").get<std::size_t>()}});
  }
  a.unmatched = j.value("unmatched", std::vector<std::string>{});
}

/// Gold annotations may be stored as bare term lists (no spans); this
/// re-grounds any annotation against its abstract.
inline JargonAnnotation reground(const JargonAnnotation& a, std::string_view abstract) {
  return make_annotation(a.arxiv_id, a.reader_id, a.source, a.terms, abstract);
}

inline std::vector<JargonAnnotation> load_annotations(const fs::path& path) {
  std::vector<JargonAnnotation> out;
  for (const auto& row : read_jsonl(path)) {
    try {
      out.push_back(row.get<JargonAnnotation>());
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("{}: bad annotation: {}", path.string(), e.what()), row.dump());
    }
  }
  return out;
}

inline void save_annotations(const fs::path& path, const std::vector<JargonAnnotation>& annotations) {
  std::vector<json> rows;
  for (const auto& a : annotations) rows.emplace_back(a);
  write_jsonl(path, rows);
}

}  // namespace dejargon::jargon

#endif  // DEJARGON_JARGON_ANNOTATION_HPP
