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

// Prompt templates for jargon identification and definition.
//
// Templates use `{{name}}` placeholders. Rendering is single pass: values are
// inserted verbatim and never re-scanned, so an abstract that happens to
// contain braces renders unchanged. A template referencing a name that the
// renderer does not supply is rejected.

#ifndef DEJARGON_PROFILES_PROMPTS_HPP
#define DEJARGON_PROFILES_PROMPTS_HPP

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/core/text.hpp"
#include "dejargon/llm/config.hpp"
#include "dejargon/profiles/profile.hpp"

namespace dejargon::profiles {

/// Reply the identification prompt asks for when nothing is jargon.
inline constexpr std::string_view kNoJargonSentinel = "NO_JARGON";

/// Separator between retrieved snippets inside a definition prompt.
inline constexpr std::string_view kSnippetDelimiter = "\n\n-----\n\n";

struct PromptBundle {
  std::string system_text;
  std::string query_text;
  llm::ModelConfig model_config;

  bool operator==(const PromptBundle&) const = default;
};

class Template {
 public:
  explicit Template(std::string source) : source_(std::move(source)) {
    std::size_t pos = 0;
    while ((pos = source_.find("{{", pos)) != std::string::npos) {
      const std::size_t close = source_.find("}}", pos + 2);
      if (close == std::string::npos) throw ParseError("template: unterminated placeholder", source_);
      const std::string name(text::trim(std::string_view(source_).substr(pos + 2, close - pos - 2)));
      if (name.empty()) throw ParseError("template: empty placeholder", source_);
      names_.insert(name);
      pos = close + 2;
    }
  }

  const std::set<std::string>& placeholders() const { return names_; }
  const std::string& source() const { return source_; }

  std::string render(const std::map<std::string, std::string>& values) const {
    for (const auto& name : names_) {
      if (!values.count(name)) throw PreconditionError(fmt::format("template: no value for '{{{{{}}}}}'", name));
    }
    std::string out;
    std::size_t pos = 0;
    while (true) {
      const std::size_t open = source_.find("{{", pos);
      if (open == std::string::npos) {
        out.append(source_, pos, std::string::npos);
        return out;
      }
      const std::size_t close = source_.find("}}", open + 2);
      out.append(source_, pos, open - pos);
      out += values.at(std::string(text::trim(std::string_view(source_).substr(open + 2, close - open - 2))));
      pos = close + 2;
    }
  }

 private:
  std::string source_;
  std::set<std::string> names_;
};

/// How a reader profile is presented to the model. Plain descriptions were
/// the more consistent variant in pilots, hence the default.
enum class PersonalizationMode { description, ratings, description_and_ratings };

enum class DefinitionMode { abstract_only, rag };

inline std::string to_string(DefinitionMode m) { return m == DefinitionMode::rag ? "rag" : "abstract_only"; }

inline DefinitionMode definition_mode_from_string(std::string_view s) {
  if (s == "rag") return DefinitionMode::rag;
  if (s == "abstract_only") return DefinitionMode::abstract_only;
  throw ParseError(fmt::format("unknown definition method '{}'", s));
}

/// The full template set. Files on disk (see templates/v1/) override the
/// built-in copies one by one.
struct PromptTemplates {
  std::string version = "v1";
  std::string identify_system;
  std::string identify_query;
  std::string define_system;
  std::string define_query_abstract;
  std::string define_query_rag;

  static const std::vector<std::pair<std::string, std::string PromptTemplates::*>>& files() {
    static const std::vector<std::pair<std::string, std::string PromptTemplates::*>> kFiles = {
        {"identify.system.txt", &PromptTemplates::identify_system},
        {"identify.query.txt", &PromptTemplates::identify_query},
        {"define.system.txt", &PromptTemplates::define_system},
        {"define.query.abstract.txt", &PromptTemplates::define_query_abstract},
        {"define.query.rag.txt", &PromptTemplates::define_query_rag}};
    return kFiles;
  }

  static PromptTemplates defaults() {
    PromptTemplates t;
    t.identify_system =
        "You help a specific reader make sense of scientific abstracts. Jargon, for this reader, is "
        "any word or multi-word phrase in an abstract that they would find difficult to understand "
        "or infer from the surrounding text, and that would impede their comprehension of the work. "
        "Judge difficulty from the reader's background only; a term can be jargon for one reader and "
        "plain language for another.\n";
    t.identify_query =
        "About the reader:\n"
        "{{reader_block}}\n"
        "\n"
        "Abstract:\n"
        "{{abstract}}\n"
        "\n"
        "List the terms in this abstract that this reader would find to be jargon.\n"
        "- Copy each term exactly as it is written in the abstract.\n"
        "- Keep a multi-word phrase together when it names one concept that is hard to understand "
        "as a whole, instead of splitting it into single words.\n"
        "- Write one term per line, with no numbering, bullets, quotes, or commentary.\n"
        "- It is fine to list nothing. If this reader would understand every term, reply with "
        "exactly {{no_jargon_sentinel}} and nothing else.\n";
    t.define_system =
        "You explain technical terms from research papers to curious non-specialists such as "
        "science reporters. Ground every statement in the context you are given and do not add "
        "claims that the context does not support.\n";
    t.define_query_abstract =
        "Context, from the abstract of a research paper:\n"
        "{{context}}\n"
        "\n"
        "Using only this context, write a short, accessible definition (two or three sentences) "
        "of the term \"{{term}}\" as it is used in this paper.\n";
    t.define_query_rag =
        "Context, excerpts retrieved from the full text of a research paper:\n"
        "{{context}}\n"
        "\n"
        "Using only this context, write a short, accessible definition (two or three sentences) "
        "of the term \"{{term}}\" as it is used in this paper.\n";
    return t;
  }

  /// Built-in defaults with any files present in `dir` substituted.
  static PromptTemplates load(const fs::path& dir) {
    PromptTemplates t = defaults();
    t.version = dir.filename().string();
    for (const auto& [file, member] : files()) {
      const fs::path path = dir / file;
      if (fs::exists(path)) t.*member = read_text_file(path);
    }
    return t;
  }
};

namespace detail {

inline std::string ratings_block(const ReaderProfile& profile) {
  std::string out = "Self-reported expertise (1-5, where 5 means expert):";
  for (const auto& [topic, rating] : profile.ratings) out += fmt::format("\n- {}: {}/5", topic, rating);
  return out;
}

}  // namespace detail

inline PromptBundle render_identification_prompt(
    const ReaderProfile& profile, const std::string& abstract, const llm::ModelConfig& config = {},
    PersonalizationMode mode = PersonalizationMode::description,
    const PromptTemplates& templates = PromptTemplates::defaults()) {
  if (text::trim(abstract).empty()) throw PreconditionError("identification prompt: empty abstract");
  profile.validate();
  std::string reader_block;
  switch (mode) {
    case PersonalizationMode::description:
      reader_block = profile.description;
      break;
    case PersonalizationMode::ratings:
      require(!profile.ratings.empty(), fmt::format("profile {} has no ratings", profile.reader_id));
      reader_block = detail::ratings_block(profile);
      break;
    case PersonalizationMode::description_and_ratings:
      reader_block = profile.description + "\n" +
                     (profile.ratings.empty() ? std::string() : detail::ratings_block(profile));
      break;
  }
  return {Template(templates.identify_system).render({}),
          Template(templates.identify_query)
              .render({{"reader_block", reader_block},
                       {"abstract", abstract},
                       {"no_jargon_sentinel", std::string(kNoJargonSentinel)}}),
          config};
}

inline std::string join_snippets(const std::vector<std::string>& snippets) {
  return text::join(snippets, kSnippetDelimiter);
}

/// `context` is the abstract for abstract_only, or the joined retrieved
/// snippets (see join_snippets) for rag.
inline PromptBundle render_definition_prompt(const std::string& term, const std::string& context,
                                             DefinitionMode mode, const llm::ModelConfig& config = {},
                                             const PromptTemplates& templates = PromptTemplates::defaults()) {
  if (text::trim(term).empty()) throw PreconditionError("definition prompt: empty term");
  if (text::trim(context).empty()) throw PreconditionError("definition prompt: empty context");
  const std::string& query =
      mode == DefinitionMode::rag ? templates.define_query_rag : templates.define_query_abstract;
  return {Template(templates.define_system).render({}),
          Template(query).render({{"term", term}, {"context", context}}), config};
}

}  // namespace dejargon::profiles

#endif  // DEJARGON_PROFILES_PROMPTS_HPP
