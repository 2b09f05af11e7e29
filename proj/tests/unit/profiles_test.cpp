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

#include <gtest/gtest.h>

#include "dejargon/profiles/profile.hpp"
#include "dejargon/profiles/prompts.hpp"
#include "support/temp_dir.hpp"

namespace dejargon::profiles {
namespace {

using testing_support::TempDir;

const fs::path kSource = DEJARGON_SOURCE_DIR;

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

ReaderProfile shipped(const std::string& id) {
  return read_json_file(kSource / "data" / "profiles" / (id + ".json")).get<ReaderProfile>();
}

const std::string kAbstract =
    "We propose Lagrangian-guided Monte Carlo tree search for constrained planning {with braces}.";

TEST(Profile, ShippedProfilesValidate) {
  for (const std::string id : {"rid0", "rid1"}) {
    const auto p = shipped(id);
    EXPECT_EQ(p.reader_id, id);
    EXPECT_NO_THROW(p.validate());
    EXPECT_FALSE(p.ratings.empty());
  }
}

TEST(Profile, ValidationRejectsBadFields) {
  ReaderProfile p{"rid9", "A reader.", {}, {}};
  EXPECT_NO_THROW(p.validate());
  p.ratings["ml"] = 6;
  EXPECT_THROW(p.validate(), PreconditionError);
  p.ratings["ml"] = 0;
  EXPECT_THROW(p.validate(), PreconditionError);
  p = {"../x", "A reader.", {}, {}};
  EXPECT_THROW(p.validate(), PreconditionError);
  p = {"rid9", "  ", {}, {}};
  EXPECT_THROW(p.validate(), PreconditionError);
}

TEST(ProfileStore, AddGetListAndConflict) {
  TempDir dir;
  ProfileStore store(dir / "profiles");
  const auto rid1 = shipped("rid1");
  const auto rid0 = shipped("rid0");
  store.add(rid1);
  store.add(rid0);
  EXPECT_EQ(store.get("rid0"), rid0);
  const auto all = store.list();
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].reader_id, "rid0");
  EXPECT_THROW(store.add(rid0), ConflictError);
  auto changed = rid0;
  changed.description = "Changed.";
  store.add(changed, true);
  EXPECT_EQ(store.get("rid0").description, "Changed.");
  EXPECT_THROW(store.get("nobody"), NotFoundError);
  EXPECT_THROW(store.get(".."), NotFoundError);
}

TEST(Template, RendersSinglePassAndChecksNames) {
  const Template t("Hello {{ name }}, {{name}} / {{other}}");
  EXPECT_EQ(t.placeholders(), (std::set<std::string>{"name", "other"}));
  EXPECT_EQ(t.render({{"name", "{{other}}"}, {"other", "x"}}), "Hello {{other}}, {{other}} / x");
  EXPECT_THROW(t.render({{"name", "n"}}), PreconditionError);
  EXPECT_THROW(Template("open {{ never"), ParseError);
  EXPECT_THROW(Template("empty {{ }}"), ParseError);
}

TEST(Prompts, TemplateFilesMatchBuiltInDefaults) {
  const auto defaults = PromptTemplates::defaults();
  const fs::path dir = kSource / "templates" / "v1";
  for (const auto& [file, member] : PromptTemplates::files()) {
    ASSERT_TRUE(fs::exists(dir / file)) << file;
    EXPECT_EQ(read_text_file(dir / file), defaults.*member) << file;
  }
  EXPECT_EQ(PromptTemplates::load(dir).version, "v1");
}

TEST(Prompts, TemplateFilesOverrideDefaults) {
  TempDir dir;
  std::ofstream(dir / "define.system.txt") << "Custom system.";
  const auto t = PromptTemplates::load(dir.path());
  EXPECT_EQ(t.define_system, "Custom system.");
  EXPECT_EQ(t.identify_query, PromptTemplates::defaults().identify_query);
}

TEST(Prompts, IdentificationEmbedsDescriptionOnceAndAbstractVerbatim) {
  const auto rid0 = shipped("rid0");
  const auto bundle = render_identification_prompt(rid0, kAbstract);
  EXPECT_EQ(count_occurrences(bundle.query_text, rid0.description), 1u);
  EXPECT_NE(bundle.query_text.find(kAbstract), std::string::npos);
  EXPECT_NE(bundle.query_text.find(kNoJargonSentinel), std::string::npos);
  EXPECT_EQ(bundle.query_text.find("{{"), std::string::npos);
  EXPECT_EQ(bundle.system_text.find("{{"), std::string::npos);
  // Description-only by default: no ratings leak into the prompt.
  EXPECT_EQ(bundle.query_text.find("/5"), std::string::npos);
}

TEST(Prompts, IdentificationIsDeterministic) {
  const auto rid1 = shipped("rid1");
  EXPECT_EQ(render_identification_prompt(rid1, kAbstract), render_identification_prompt(rid1, kAbstract));
}

TEST(Prompts, IdentificationRejectsEmptyAbstract) {
  EXPECT_THROW(render_identification_prompt(shipped("rid0"), ""), PreconditionError);
  EXPECT_THROW(render_identification_prompt(shipped("rid0"), " \n"), PreconditionError);
}

TEST(Prompts, RatingsModes) {
  const auto rid0 = shipped("rid0");
  const auto ratings = render_identification_prompt(rid0, kAbstract, {}, PersonalizationMode::ratings);
  EXPECT_EQ(ratings.query_text.find(rid0.description), std::string::npos);
  for (const auto& [topic, r] : rid0.ratings) {
    EXPECT_NE(ratings.query_text.find(fmt::format("{}: {}/5", topic, r)), std::string::npos);
  }
  const auto both = render_identification_prompt(rid0, kAbstract, {}, PersonalizationMode::description_and_ratings);
  EXPECT_EQ(count_occurrences(both.query_text, rid0.description), 1u);
  EXPECT_NE(both.query_text.find("/5"), std::string::npos);

  ReaderProfile bare{"r", "Reader.", {}, {}};
  EXPECT_THROW(render_identification_prompt(bare, kAbstract, {}, PersonalizationMode::ratings), PreconditionError);
}

TEST(Prompts, ConfigTravelsWithBundle) {
  llm::ModelConfig c;
  c.max_tokens = 64;
  EXPECT_EQ(render_identification_prompt(shipped("rid0"), kAbstract, c).model_config.max_tokens, 64);
}

TEST(Prompts, DefinitionContainsTermAndContext) {
  const auto b = render_definition_prompt("Monte Carlo tree search", kAbstract, DefinitionMode::abstract_only);
  EXPECT_NE(b.query_text.find("Monte Carlo tree search"), std::string::npos);
  EXPECT_NE(b.query_text.find(kAbstract), std::string::npos);
  EXPECT_EQ(b.query_text.find("{{"), std::string::npos);
}

TEST(Prompts, RagDefinitionJoinsSnippetsWithDelimiter) {
  const std::vector<std::string> snippets = {"first snippet", "second snippet", "third snippet"};
  const auto b = render_definition_prompt("dual variable", join_snippets(snippets), DefinitionMode::rag);
  for (const auto& s : snippets) EXPECT_NE(b.query_text.find(s), std::string::npos);
  EXPECT_NE(b.query_text.find("first snippet" + std::string(kSnippetDelimiter) + "second snippet"),
            std::string::npos);
  EXPECT_EQ(count_occurrences(b.query_text, std::string(kSnippetDelimiter)), 2u);
  EXPECT_NE(b.query_text, render_definition_prompt("dual variable", join_snippets(snippets),
                                                   DefinitionMode::abstract_only)
                              .query_text);
}

TEST(Prompts, DefinitionRejectsEmptyInputs) {
  EXPECT_THROW(render_definition_prompt("", kAbstract, DefinitionMode::abstract_only), PreconditionError);
  EXPECT_THROW(render_definition_prompt("term", "", DefinitionMode::rag), PreconditionError);
}

TEST(Prompts, DefinitionModeStrings) {
  EXPECT_EQ(definition_mode_from_string("rag"), DefinitionMode::rag);
  EXPECT_EQ(to_string(DefinitionMode::abstract_only), "abstract_only");
  EXPECT_THROW(definition_mode_from_string("both"), ParseError);
}

}  // namespace
}  // namespace dejargon::profiles
