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

// dejargon: command-line front end for the pipeline and the API server.

#include <csignal>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "dejargon/app/commands.hpp"
#include "dejargon/app/workspace.hpp"
#include "dejargon/server/api.hpp"

namespace {

using namespace dejargon;

httplib::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

struct Globals {
  std::string workspace = ".";
  std::string mode;
  std::string fixtures;
  bool deterministic = false;
};

app::Settings settings_for(const app::Workspace& ws, const Globals& g) {
  app::Settings s = app::load_settings(ws);
  if (!g.mode.empty()) s.mode = llm::mode_from_string(g.mode);
  if (!g.fixtures.empty()) s.fixtures_dir = fs::absolute(g.fixtures);
  return s;
}

std::optional<corpus::Split> split_option(const std::string& s) {
  if (s == "all") return std::nullopt;
  return corpus::split_from_string(s);
}

/// Prints a CSV and keeps a copy under results/ (or at --out).
void emit_csv(const app::Workspace& ws, const std::string& name, const std::string& out, const std::string& csv) {
  std::cout << csv;
  if (out.empty()) {
    app::write_result(ws, name, csv);
  } else {
    write_text_atomic(out, csv);
  }
}

std::map<std::string, int> parse_ratings(const std::vector<std::string>& items) {
  std::map<std::string, int> out;
  for (const auto& item : items) {
    const auto eq = item.rfind('=');
    require(eq != std::string::npos && eq > 0, fmt::format("rating '{}' is not topic=N", item));
    try {
      out[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw PreconditionError(fmt::format("rating '{}' is not topic=N", item));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Personalized jargon identification and definition pipeline"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", DEJARGON_VERSION);
  Globals g;
  cli.add_option("-w,--workspace", g.workspace, "Workspace directory")->capture_default_str();
  cli.add_option("--mode", g.mode, "LLM gateway mode: live, record or replay (overrides settings)")
      ->check(CLI::IsMember({"live", "record", "replay"}));
  cli.add_option("--fixtures", g.fixtures, "Replay fixture directory (overrides settings)");
  cli.add_flag("--deterministic", g.deterministic, "Greedy decoding (temperature 0)");

  // init
  auto* init = cli.add_subcommand("init", "Create a workspace with default settings");

  // ingest
  auto* ingest = cli.add_subcommand("ingest", "Harvest arXiv listings into the corpus store");
  std::string categories;
  std::string from;
  std::string to;
  std::string feed_fixtures;
  std::string fulltext_dir;
  std::string date_field;
  bool fetch_fulltext = false;
  bool all_submissions = false;
  std::size_t page_size = 100;
  ingest->add_option("--categories", categories, "Comma-separated categories, e.g. cs.AI,cs.HC,cs.CY")->required();
  ingest->add_option("--from", from, "First day (YYYY-MM-DD)")->required();
  ingest->add_option("--to", to, "Last day (YYYY-MM-DD), inclusive")->required();
  ingest->add_option("--feed-fixtures", feed_fixtures, "Read saved feed pages instead of the live API");
  ingest->add_option("--fulltext-dir", fulltext_dir, "Directory of <id>.txt / <id>.pdf fulltexts");
  ingest->add_flag("--fetch-fulltext", fetch_fulltext, "Download and convert PDFs");
  ingest->add_option("--date-field", date_field, "updated or submitted")->check(CLI::IsMember({"updated", "submitted"}));
  ingest->add_flag("--all-submissions", all_submissions, "Keep submissions without a peer-review note");
  ingest->add_option("--page-size", page_size, "Results per API page")->capture_default_str();

  // sample
  auto* sample = cli.add_subcommand("sample", "Stratified test/dev split by primary category");
  double fraction = 0.25;
  std::uint64_t seed = 0;
  sample->add_option("--fraction", fraction, "Test fraction per stratum")->capture_default_str();
  sample->add_option("--seed", seed, "Sampling seed")->required();

  // profiles
  auto* profiles_cmd = cli.add_subcommand("profiles", "Manage reader profiles");
  profiles_cmd->require_subcommand(1);
  auto* profiles_add = profiles_cmd->add_subcommand("add", "Add a profile");
  auto* profiles_list = profiles_cmd->add_subcommand("list", "List profiles");
  std::string profile_file;
  std::string profile_id;
  std::string profile_description;
  std::vector<std::string> expertise;
  std::vector<std::string> ratings;
  bool replace = false;
  profiles_add->add_option("--file", profile_file, "Profile JSON document");
  profiles_add->add_option("--id", profile_id, "Reader id");
  profiles_add->add_option("--description", profile_description, "Expertise narrative");
  profiles_add->add_option("--expertise", expertise, "Expertise area (repeatable)");
  profiles_add->add_option("--rating", ratings, "topic=N self-rating, 1-5 (repeatable)");
  profiles_add->add_flag("--replace", replace, "Overwrite an existing profile");

  // import-annotations
  auto* import = cli.add_subcommand("import-annotations", "Import annotations (e.g. human gold) into the workspace");
  std::string import_file;
  std::string source = "human";
  import->add_option("--file", import_file, "Annotations JSONL")->required();
  import->add_option("--source", source, "human or model")->check(CLI::IsMember({"human", "model"}))->capture_default_str();

  // identify
  auto* identify = cli.add_subcommand("identify", "Identify jargon for one reader");
  std::string reader;
  std::string split = "test";
  std::size_t jobs = 1;
  identify->add_option("--reader", reader, "Reader id")->required();
  identify->add_option("--split", split, "test, dev or all")->check(CLI::IsMember({"test", "dev", "all"}))->capture_default_str();
  identify->add_option("--jobs", jobs, "Concurrent requests")->capture_default_str();

  // score
  auto* score = cli.add_subcommand("score", "Score model annotations against gold");
  std::string pred;
  std::string gold;
  std::string policy = "exact";
  std::string out;
  score->add_option("--pred", pred, "Predicted annotations (default: workspace model annotations)");
  score->add_option("--gold", gold, "Gold annotations (default: workspace human annotations)");
  score->add_option("--policy", policy, "exact or subsumption")->check(CLI::IsMember({"exact", "subsumption"}))->capture_default_str();
  score->add_option("--out", out, "CSV destination (default: results/scores_<policy>.csv)");

  // index
  auto* index = cli.add_subcommand("index", "Chunk and embed fulltexts");
  std::vector<std::string> index_ids;
  index->add_option("--arxiv-id", index_ids, "Article id (repeatable; default: every article)");

  // define
  auto* define = cli.add_subcommand("define", "Generate definitions for annotated terms");
  std::string method = "both";
  std::optional<double> threshold;
  std::optional<std::size_t> top_k;
  bool force = false;
  define->add_option("--method", method, "abstract, rag or both")->check(CLI::IsMember({"abstract", "rag", "both"}))->capture_default_str();
  define->add_option("--reader", reader, "Only this reader's terms");
  define->add_option("--source", source, "Whose terms: human or model")->check(CLI::IsMember({"human", "model"}))->capture_default_str();
  define->add_option("--threshold", threshold, "Cosine threshold (overrides settings)");
  define->add_option("--k", top_k, "Snippets per rag prompt (overrides settings)");
  define->add_flag("--force", force, "Regenerate existing definitions");

  // pairs
  auto* pairs = cli.add_subcommand("pairs", "Export blinded definition pairs and their key");
  pairs->add_option("--seed", seed, "Blinding seed")->required();
  pairs->add_option("--reader", reader, "Only this reader's terms");
  pairs->add_option("--source", source, "Whose terms: human or model")->check(CLI::IsMember({"human", "model"}))->capture_default_str();
  pairs->add_flag("--force", force, "Replace pairs even when judgments exist");

  // evaluate
  auto* evaluate = cli.add_subcommand("evaluate", "Compute evaluation tables");
  std::string table;
  std::string judgments;
  std::string key;
  std::vector<std::string> annotation_files;
  evaluate->add_option("table", table, "accuracy, quality, counts or stats")
      ->required()
      ->check(CLI::IsMember({"accuracy", "quality", "counts", "stats"}));
  evaluate->add_option("--judgments", judgments, "Judgments JSONL (default: workspace)");
  evaluate->add_option("--key", key, "Unblinding key (default: workspace)");
  evaluate->add_option("--annotations", annotation_files, "Annotation files for counts (default: workspace)");
  evaluate->add_option("--out", out, "CSV destination (default: results/<table>.csv)");

  // annotate
  auto* annotate = cli.add_subcommand("annotate", "Judge blinded pairs interactively");
  std::string pairs_file;
  annotate->add_option("--pairs", pairs_file, "Blinded pairs JSONL (default: workspace)");
  annotate->add_option("--reader", reader, "Annotator / reader id")->required();
  annotate->add_option("--judgments", judgments, "Judgments JSONL (default: workspace)");

  // serve
  auto* serve = cli.add_subcommand("serve", "Serve the JSON API");
  std::string bind = "127.0.0.1:8080";
  std::string store;
  std::string static_dir;
  std::string cors_origin = "*";
  serve->add_option("--bind", bind, "host:port")->capture_default_str();
  serve->add_option("--store", store, "Workspace to serve (default: --workspace)");
  serve->add_option("--reader", reader, "Default reader id");
  serve->add_option("--static", static_dir, "Directory served at /");
  serve->add_option("--cors-origin", cors_origin, "Access-Control-Allow-Origin value")->capture_default_str();

  CLI11_PARSE(cli, argc, argv);

  app::Workspace ws{g.workspace};
  try {
    if (init->parsed()) {
      for (const auto& dir : {ws.corpus_dir(), ws.profiles_dir(), ws.root / "annotations", ws.index_dir(),
                              ws.definitions_file().parent_path(), ws.pairs_file().parent_path(),
                              ws.judgments_file().parent_path(), ws.results_dir()}) {
        fs::create_directories(dir);
      }
      if (!fs::exists(ws.settings_file())) write_json_file(ws.settings_file(), app::settings_to_json({}));
      fmt::print(stderr, "initialized {}\n", ws.root.string());
      return 0;
    }

    if (ingest->parsed()) {
      app::IngestOptions o;
      o.categories = text::split(categories, ',');
      for (auto& c : o.categories) c = std::string(text::trim(c));
      o.window = {corpus::Date::parse(from), corpus::Date::parse(to)};
      o.listing.page_size = page_size;
      o.listing.date_field = date_field.empty() ? app::load_settings(ws).date_field : app::date_field_from_string(date_field);
      if (!feed_fixtures.empty()) o.feed_fixtures = feed_fixtures;
      if (!fulltext_dir.empty()) o.fulltext_dir = fulltext_dir;
      o.fetch_fulltext = fetch_fulltext;
      o.peer_reviewed_only = !all_submissions;
      const auto r = app::ingest(ws, o);
      fmt::print("listed {} kept {} fulltext_extracted {} fulltext_failed {}\n", r.listed, r.kept, r.extracted,
                 r.extraction_failed);
      return 0;
    }

    if (sample->parsed()) {
      const auto r = app::sample(ws, fraction, seed);
      for (const auto& [stratum, counts] : r.strata) {
        fmt::print("{} {} -> {}\n", stratum, counts.first, counts.second);
      }
      fmt::print("test {} dev {}\n", r.test, r.dev);
      return 0;
    }

    if (profiles_add->parsed()) {
      profiles::ReaderProfile p;
      if (!profile_file.empty()) {
        p = read_json_file(profile_file).get<profiles::ReaderProfile>();
      } else {
        p.reader_id = profile_id;
        p.description = profile_description;
        p.expertise_areas = expertise;
        p.ratings = parse_ratings(ratings);
      }
      profiles::ProfileStore(ws.profiles_dir()).add(p, replace);
      fmt::print("added {}\n", p.reader_id);
      return 0;
    }
    if (profiles_list->parsed()) {
      for (const auto& p : profiles::ProfileStore(ws.profiles_dir()).list()) {
        fmt::print("{}\t{}\n", p.reader_id, p.description);
      }
      return 0;
    }

    if (import->parsed()) {
      const auto n = app::import_annotations(ws, import_file, jargon::source_from_string(source));
      fmt::print("imported {} {} annotations\n", n, source);
      return 0;
    }

    const app::Settings settings = settings_for(ws, g);

    if (identify->parsed()) {
      auto gateway = app::make_gateway(ws, settings);
      app::IdentifyCommandOptions o{reader, split_option(split), jobs, g.deterministic};
      const auto r = app::identify(ws, settings, *gateway, o);
      fmt::print("annotated {} terms {} unmatched {} network_calls {}\n", r.annotated, r.terms, r.unmatched,
                 gateway->network_calls());
      for (const auto& f : r.failures) fmt::print(stderr, "failed: {}\n", f);
      return r.failures.empty() ? 0 : 3;
    }

    if (score->parsed()) {
      const auto table_ = app::score_annotations(
          jargon::load_annotations(pred.empty() ? ws.annotations_file("model") : fs::path(pred)),
          jargon::load_annotations(gold.empty() ? ws.annotations_file("human") : fs::path(gold)),
          jargon::match_policy_from_string(policy));
      emit_csv(ws, fmt::format("scores_{}.csv", policy), out, app::score_csv(table_));
      return 0;
    }

    if (index->parsed()) {
      auto gateway = app::make_gateway(ws, settings);
      const auto r = app::index_articles(ws, settings, *gateway, index_ids);
      fmt::print("indexed {} articles, {} chunks ({} without fulltext) network_calls {}\n", r.articles, r.chunks,
                 r.without_fulltext, gateway->network_calls());
      return 0;
    }

    if (define->parsed()) {
      app::Settings s = settings;
      if (threshold) s.retrieval.threshold = *threshold;
      if (top_k) s.retrieval.k = *top_k;
      s.validate();
      auto gateway = app::make_gateway(ws, s);
      app::DefineCommandOptions o;
      o.reader_id = reader;
      o.source = jargon::source_from_string(source);
      o.abstract_only = method != "rag";
      o.rag = method != "abstract";
      o.force = force;
      o.deterministic = g.deterministic;
      const auto r = app::define(ws, s, *gateway, o);
      fmt::print("generated {} reused {} no_context {} network_calls {}\n", r.generated, r.reused, r.no_context,
                 gateway->network_calls());
      return 0;
    }

    if (pairs->parsed()) {
      app::PairsOptions o{seed, jargon::source_from_string(source), reader, force};
      const auto r = app::make_pairs(ws, o);
      fmt::print("pairs {} accuracy_only {} skipped_missing_definitions {}\n", r.pairs, r.accuracy_only,
                 r.missing_definitions);
      return 0;
    }

    if (evaluate->parsed()) {
      const fs::path jpath = judgments.empty() ? ws.judgments_file() : fs::path(judgments);
      const fs::path kpath = key.empty() ? ws.key_file() : fs::path(key);
      std::string csv;
      if (table == "accuracy") {
        csv = app::evaluate_accuracy(jpath, kpath);
      } else if (table == "quality") {
        csv = app::evaluate_quality(jpath, kpath);
      } else if (table == "counts") {
        std::vector<fs::path> files;
        for (const auto& f : annotation_files) files.emplace_back(f);
        if (files.empty()) files = {ws.annotations_file("human"), ws.annotations_file("model")};
        csv = app::evaluate_counts(files);
      } else {
        csv = app::evaluate_stats(ws.annotations_file("human"), ws.annotations_file("model"));
      }
      emit_csv(ws, table + ".csv", out, csv);
      return 0;
    }

    if (annotate->parsed()) {
      const auto n = app::annotate(pairs_file.empty() ? ws.pairs_file() : fs::path(pairs_file),
                                   judgments.empty() ? ws.judgments_file() : fs::path(judgments), reader, std::cin,
                                   std::cout);
      fmt::print("\nrecorded {} judgment(s)\n", n);
      return 0;
    }

    if (serve->parsed()) {
      server::ApiConfig config;
      config.workspace = app::Workspace{store.empty() ? ws.root : fs::path(store)};
      const auto colon = bind.rfind(':');
      require(colon != std::string::npos, "--bind must be host:port");
      config.host = bind.substr(0, colon);
      config.port = std::stoi(bind.substr(colon + 1));
      config.default_reader = reader;
      config.cors_origin = cors_origin;
      config.max_page_size = settings.page_size_limit;
      config.default_page_size = std::min<std::size_t>(config.default_page_size, config.max_page_size);
      if (!static_dir.empty()) config.static_dir = static_dir;
      server::Api api(config);
      httplib::Server http;
      g_server = &http;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      fmt::print(stderr, "serving {} on http://{}:{}\n", config.workspace.root.string(), config.host, config.port);
      if (!server::serve(api, http) && g_server) {
        fmt::print(stderr, "error: could not bind {}\n", bind);
        return 1;
      }
      return 0;
    }
  } catch (const CacheMissError& e) {
    fmt::print(stderr, "error: {}\n(replay mode has no fixture for this request; rerun with --mode record)\n",
               e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
