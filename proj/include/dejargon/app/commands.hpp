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

// Pipeline stages over a workspace. Each stage reads what earlier stages
// wrote and rewrites its own outputs in a stable order, so reruns over the
// same inputs produce identical files.

#ifndef DEJARGON_APP_COMMANDS_HPP
#define DEJARGON_APP_COMMANDS_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/core.h>

#include "dejargon/app/workspace.hpp"
#include "dejargon/core/csv.hpp"
#include "dejargon/core/error.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/corpus/arxiv_client.hpp"
#include "dejargon/corpus/fulltext.hpp"
#include "dejargon/corpus/selection.hpp"
#include "dejargon/corpus/store.hpp"
#include "dejargon/definitions/blinding.hpp"
#include "dejargon/definitions/definitions.hpp"
#include "dejargon/evaluation/judgments.hpp"
#include "dejargon/evaluation/stats.hpp"
#include "dejargon/jargon/annotation.hpp"
#include "dejargon/jargon/scoring.hpp"
#include "dejargon/profiles/profile.hpp"
#include "dejargon/retrieval/retrieval.hpp"

namespace dejargon::app {

using corpus::ArticleRecord;
using corpus::CorpusStore;
using definitions::Definition;
using definitions::DefinitionMode;
using jargon::JargonAnnotation;
using jargon::Source;

inline CorpusStore load_corpus(const Workspace& ws) { return CorpusStore::load(ws.corpus_dir()); }

/// Annotations keyed by (arxiv_id, reader_id); file order is irrelevant.
inline std::map<std::pair<std::string, std::string>, JargonAnnotation> annotations_by_key(
    const std::vector<JargonAnnotation>& annotations) {
  std::map<std::pair<std::string, std::string>, JargonAnnotation> out;
  for (const auto& a : annotations) {
    if (!out.emplace(std::pair(a.arxiv_id, a.reader_id), a).second) {
      throw ParseError(fmt::format("two annotations for ({}, {})", a.arxiv_id, a.reader_id));
    }
  }
  return out;
}

/// Replaces entries with the same (arxiv_id, reader_id) and rewrites the
/// file sorted by that key.
inline void merge_annotations(const fs::path& path, const std::vector<JargonAnnotation>& fresh) {
  auto merged = annotations_by_key(jargon::load_annotations(path));
  for (const auto& a : fresh) merged.insert_or_assign(std::pair(a.arxiv_id, a.reader_id), a);
  std::vector<JargonAnnotation> rows;
  for (auto& [_, a] : merged) rows.push_back(std::move(a));
  jargon::save_annotations(path, rows);
}

inline void write_result(const Workspace& ws, const std::string& name, const std::string& contents) {
  write_text_atomic(ws.results_dir() / name, contents);
}

// ---------------------------------------------------------------------------
// ingest

struct IngestOptions {
  std::vector<std::string> categories;
  corpus::DateRange window;
  corpus::ListingConfig listing;
  /// Saved feed pages instead of the live API.
  std::optional<fs::path> feed_fixtures;
  /// Directory of `<id>.txt` or `<id>.pdf` fulltexts ('/' in ids becomes '_').
  std::optional<fs::path> fulltext_dir;
  bool fetch_fulltext = false;
  bool peer_reviewed_only = true;
};

struct IngestResult {
  std::size_t listed = 0;
  std::size_t kept = 0;
  std::size_t extracted = 0;
  std::size_t extraction_failed = 0;
};

inline std::string file_stem_for(const std::string& arxiv_id) {
  std::string stem = arxiv_id;
  std::replace(stem.begin(), stem.end(), '/', '_');
  return stem;
}

inline IngestResult ingest(const Workspace& ws, IngestOptions options,
                           std::shared_ptr<http::Transport> transport = nullptr) {
  require(!options.categories.empty(), "ingest: no categories");
  for (const auto& c : options.categories) {
    require(corpus::is_valid_category(c), fmt::format("ingest: invalid category '{}'", c));
  }
  if (options.feed_fixtures) {
    transport = std::make_shared<corpus::FeedFixtureTransport>(*options.feed_fixtures);
    options.listing.request_delay = std::chrono::milliseconds(0);
  }
  if (!transport) transport = std::make_shared<http::LiveTransport>();

  corpus::RateLimiter limiter(options.listing.request_delay);
  const auto listed = corpus::fetch_listings(options.categories, options.window, *transport, limiter, options.listing);
  const auto kept = options.peer_reviewed_only ? corpus::filter_peer_reviewed(listed) : listed;

  IngestResult result{listed.size(), kept.size(), 0, 0};
  CorpusStore store = load_corpus(ws);
  corpus::FulltextConfig ft;
  ft.download_dir = ws.root / "downloads";
  for (ArticleRecord record : kept) {
    if (options.fulltext_dir) {
      const fs::path stem = *options.fulltext_dir / file_stem_for(record.arxiv_id);
      for (const char* ext : {".txt", ".pdf"}) {
        fs::path candidate = stem;
        candidate += ext;
        if (fs::exists(candidate)) {
          record = corpus::attach_fulltext(std::move(record), candidate, ft);
          break;
        }
      }
    } else if (options.fetch_fulltext) {
      http::LiveTransport pdf_transport;
      record = corpus::attach_remote_fulltext(std::move(record), pdf_transport, ft);
    }
    if (record.fulltext_status == corpus::FulltextStatus::extracted) ++result.extracted;
    if (record.fulltext_status == corpus::FulltextStatus::extraction_failed) ++result.extraction_failed;
    store.put(std::move(record));
  }
  store.save(ws.corpus_dir());
  return result;
}

// ---------------------------------------------------------------------------
// sample

struct SampleResult {
  /// stratum -> (size, test quota)
  std::map<std::string, std::pair<std::size_t, std::size_t>> strata;
  std::size_t test = 0;
  std::size_t dev = 0;
};

inline SampleResult sample(const Workspace& ws, double fraction, std::uint64_t seed) {
  CorpusStore store = load_corpus(ws);
  const auto split = corpus::stratified_sample(store.all(), fraction, seed);
  store.apply_split(split);
  store.save(ws.corpus_dir());
  SampleResult result;
  for (const auto& r : split.test) ++result.strata[r.primary_category].second;
  for (const auto& r : split.test) ++result.strata[r.primary_category].first;
  for (const auto& r : split.dev) ++result.strata[r.primary_category].first;
  result.test = split.test.size();
  result.dev = split.dev.size();
  return result;
}

/// Articles in `split`, or every article when no split is requested.
inline std::vector<ArticleRecord> select_articles(const CorpusStore& store, std::optional<corpus::Split> split) {
  if (!split) return store.all();
  if (store.split_labels().empty()) {
    throw PreconditionError("corpus has no split labels (run `sample` first, or pass --split all)");
  }
  return store.in_split(*split);
}

// ---------------------------------------------------------------------------
// identify

struct IdentifyCommandOptions {
  std::string reader_id;
  std::optional<corpus::Split> split = corpus::Split::test;
  std::size_t jobs = 1;
  bool deterministic = false;
};

struct IdentifyResult {
  std::size_t annotated = 0;
  std::size_t terms = 0;
  std::size_t unmatched = 0;
  /// "<arxiv_id>: <reason>" for articles whose reply could not be used.
  std::vector<std::string> failures;
};

inline IdentifyResult identify(const Workspace& ws, const Settings& settings, llm::Gateway& gateway,
                               const IdentifyCommandOptions& options) {
  const auto profile = profiles::ProfileStore(ws.profiles_dir()).get(options.reader_id);
  const CorpusStore store = load_corpus(ws);
  const auto articles = select_articles(store, options.split);

  jargon::IdentifyOptions io;
  io.model = options.deterministic ? settings.model.deterministic() : settings.model;
  io.personalization = settings.personalization;
  io.templates = load_templates(ws, settings);

  using Outcome = std::pair<std::optional<JargonAnnotation>, std::string>;
  const auto run_one = [&](const ArticleRecord& article) -> Outcome {
    try {
      return {jargon::identify_jargon(profile, article, gateway, io), {}};
    } catch (const ParseError& e) {
      return {std::nullopt, fmt::format("{}: {}", article.arxiv_id, e.what())};
    }
  };

  std::vector<Outcome> outcomes(articles.size());
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  for (std::size_t begin = 0; begin < articles.size(); begin += jobs) {
    std::vector<std::future<Outcome>> batch;
    const std::size_t end = std::min(articles.size(), begin + jobs);
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async, run_one,
                                 std::cref(articles[i])));
    }
    for (std::size_t i = begin; i < end; ++i) outcomes[i] = batch[i - begin].get();
  }

  IdentifyResult result;
  std::vector<JargonAnnotation> fresh;
  for (auto& [annotation, failure] : outcomes) {
    if (!annotation) {
      result.failures.push_back(std::move(failure));
      continue;
    }
    ++result.annotated;
    result.terms += annotation->terms.size();
    result.unmatched += annotation->unmatched.size();
    fresh.push_back(std::move(*annotation));
  }
  merge_annotations(ws.annotations_file("model"), fresh);
  return result;
}

/// Brings externally produced annotations (typically human gold) into the
/// workspace, grounding their terms against the stored abstracts.
inline std::size_t import_annotations(const Workspace& ws, const fs::path& file, Source source) {
  const CorpusStore store = load_corpus(ws);
  std::vector<JargonAnnotation> fresh;
  for (auto a : jargon::load_annotations(file)) {
    require(a.source == source, fmt::format("{}: annotation for ({}, {}) has source {}, expected {}",
                                            file.string(), a.arxiv_id, a.reader_id, jargon::to_string(a.source),
                                            jargon::to_string(source)));
    fresh.push_back(jargon::reground(a, store.get(a.arxiv_id).abstract));
  }
  merge_annotations(ws.annotations_file(jargon::to_string(source)), fresh);
  return fresh.size();
}

// ---------------------------------------------------------------------------
// score

struct ScoreRow {
  std::string arxiv_id;
  std::string reader_id;
  jargon::ScoreReport report;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;
  std::optional<double> median_precision;
  std::optional<double> median_recall;
  std::optional<double> median_f2;
};

/// Per (article, reader) scores where both a prediction and a gold
/// annotation exist. Medians skip undefined entries.
inline ScoreTable score_annotations(const std::vector<JargonAnnotation>& predicted,
                                    const std::vector<JargonAnnotation>& gold, jargon::MatchPolicy policy) {
  const auto pred_by_key = annotations_by_key(predicted);
  const auto gold_by_key = annotations_by_key(gold);
  ScoreTable table;
  std::vector<std::optional<double>> p, r, f;
  for (const auto& [key, g] : gold_by_key) {
    const auto it = pred_by_key.find(key);
    if (it == pred_by_key.end()) continue;
    ScoreRow row{key.first, key.second, jargon::score(it->second, g, policy)};
    p.push_back(row.report.precision);
    r.push_back(row.report.recall);
    f.push_back(row.report.f2);
    table.rows.push_back(std::move(row));
  }
  const auto median_of = [](const std::vector<std::optional<double>>& v) -> std::optional<double> {
    if (std::none_of(v.begin(), v.end(), [](const auto& x) { return x.has_value(); })) return std::nullopt;
    return evaluation::descriptives(v).median;
  };
  table.median_precision = median_of(p);
  table.median_recall = median_of(r);
  table.median_f2 = median_of(f);
  return table;
}

inline std::string score_csv(const ScoreTable& t) {
  csv::Table table({"arxiv_id", "reader_id", "tp", "fp", "fn", "precision", "recall", "f2"});
  for (const auto& row : t.rows) {
    table.add_row({row.arxiv_id, row.reader_id, std::to_string(row.report.tp), std::to_string(row.report.fp),
                   std::to_string(row.report.fn), csv::number(row.report.precision), csv::number(row.report.recall),
                   csv::number(row.report.f2)});
  }
  table.add_row({"median", "", "", "", "", csv::number(t.median_precision), csv::number(t.median_recall),
                 csv::number(t.median_f2)});
  return table.str();
}

// ---------------------------------------------------------------------------
// index

/// Loads the article's chunk index, building and saving it when absent.
/// Articles without fulltext get an empty index.
inline retrieval::ChunkIndex ensure_index(const Workspace& ws, const Settings& settings, llm::Gateway& gateway,
                                          const ArticleRecord& article, bool rebuild = false) {
  if (!article.fulltext) return retrieval::ChunkIndex();
  if (!rebuild && fs::exists(retrieval::index_path(ws.index_dir(), article.arxiv_id))) {
    return retrieval::load_index(ws.index_dir(), article.arxiv_id);
  }
  auto index = retrieval::embed_and_index(retrieval::chunk_fulltext(*article.fulltext, settings.chunking,
                                                                    article.arxiv_id),
                                          gateway, settings.model);
  retrieval::save_index(ws.index_dir(), article.arxiv_id, settings.chunking, index);
  return index;
}

struct IndexResult {
  std::size_t articles = 0;
  std::size_t chunks = 0;
  std::size_t without_fulltext = 0;
};

/// Indexes the given ids, or every article when `ids` is empty.
inline IndexResult index_articles(const Workspace& ws, const Settings& settings, llm::Gateway& gateway,
                                  const std::vector<std::string>& ids, bool rebuild = true) {
  const CorpusStore store = load_corpus(ws);
  std::vector<ArticleRecord> targets;
  if (ids.empty()) {
    targets = store.all();
  } else {
    for (const auto& id : ids) targets.push_back(store.get(id));
  }
  IndexResult result;
  for (const auto& article : targets) {
    if (!article.fulltext) {
      ++result.without_fulltext;
      continue;
    }
    result.chunks += ensure_index(ws, settings, gateway, article, rebuild).size();
    ++result.articles;
  }
  return result;
}

// ---------------------------------------------------------------------------
// define

struct DefineCommandOptions {
  /// Empty means every reader in the annotation file.
  std::string reader_id;
  Source source = Source::human;
  bool abstract_only = true;
  bool rag = true;
  bool force = false;
  bool deterministic = false;
};

struct DefineResult {
  std::size_t generated = 0;
  std::size_t reused = 0;
  std::size_t no_context = 0;
};

inline DefineResult define(const Workspace& ws, const Settings& settings, llm::Gateway& gateway,
                           const DefineCommandOptions& options) {
  require(options.abstract_only || options.rag, "define: no method selected");
  const CorpusStore store = load_corpus(ws);
  const auto annotations = jargon::load_annotations(ws.annotations_file(jargon::to_string(options.source)));

  std::map<std::string, Definition> by_key;
  for (auto& d : definitions::load_definitions(ws.definitions_file())) {
    by_key.insert_or_assign(definitions::definition_key(d.arxiv_id, d.term, d.method), std::move(d));
  }

  definitions::DefineOptions dopt;
  dopt.model = options.deterministic ? settings.model.deterministic() : settings.model;
  dopt.templates = load_templates(ws, settings);
  dopt.rag_includes_abstract = settings.rag_includes_abstract;
  std::vector<json> traces;
  dopt.trace = [&traces](const json& row) { traces.push_back(row); };

  // (article, normalized term) in a stable order, first spelling kept.
  std::vector<std::pair<std::string, std::string>> targets;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& a : annotations) {
    if (!options.reader_id.empty() && a.reader_id != options.reader_id) continue;
    for (const auto& term : a.terms) {
      if (seen.insert({a.arxiv_id, jargon::normalize_term(term)}).second) targets.emplace_back(a.arxiv_id, term);
    }
  }
  std::sort(targets.begin(), targets.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first, x.second) < std::tie(y.first, y.second);
  });

  DefineResult result;
  std::map<std::string, retrieval::ChunkIndex> indices;
  for (const auto& [arxiv_id, term] : targets) {
    const ArticleRecord& article = store.get(arxiv_id);
    if (options.abstract_only) {
      const auto key = definitions::definition_key(arxiv_id, term, DefinitionMode::abstract_only);
      if (!options.force && by_key.count(key)) {
        ++result.reused;
      } else {
        by_key.insert_or_assign(key, definitions::define_abstract_only(term, article, gateway, dopt));
        ++result.generated;
      }
    }
    if (options.rag) {
      const auto key = definitions::definition_key(arxiv_id, term, DefinitionMode::rag);
      if (!options.force && by_key.count(key)) {
        ++result.reused;
      } else {
        auto it = indices.find(arxiv_id);
        if (it == indices.end()) it = indices.emplace(arxiv_id, ensure_index(ws, settings, gateway, article)).first;
        Definition d = definitions::define_rag(term, article, it->second, settings.retrieval.threshold,
                                               settings.retrieval.k, gateway, dopt);
        if (d.status == definitions::Status::no_context) ++result.no_context;
        by_key.insert_or_assign(key, std::move(d));
        ++result.generated;
      }
    }
  }

  std::vector<Definition> rows;
  for (auto& [_, d] : by_key) rows.push_back(std::move(d));
  definitions::save_definitions(ws.definitions_file(), rows);
  for (const auto& t : traces) append_jsonl(ws.trace_file(), t);
  return result;
}

// ---------------------------------------------------------------------------
// pairs

struct PairsOptions {
  std::uint64_t seed = 0;
  Source source = Source::human;
  std::string reader_id;
  /// Allow replacing pairs that already have judgments.
  bool force = false;
};

struct PairsResult {
  std::size_t pairs = 0;
  std::size_t accuracy_only = 0;
  /// Terms skipped because a definition was missing.
  std::size_t missing_definitions = 0;
};

inline std::vector<definitions::DefinitionPair> build_pairs(const std::vector<JargonAnnotation>& annotations,
                                                            const std::vector<Definition>& defs,
                                                            const CorpusStore& store, const PairsOptions& options,
                                                            PairsResult& result) {
  std::map<std::string, const Definition*> by_key;
  for (const auto& d : defs) by_key[definitions::definition_key(d.arxiv_id, d.term, d.method)] = &d;

  std::vector<definitions::DefinitionPair> pairs;
  std::set<std::string> ids;
  for (const auto& a : annotations) {
    if (!options.reader_id.empty() && a.reader_id != options.reader_id) continue;
    const ArticleRecord& article = store.get(a.arxiv_id);
    for (const auto& term : a.terms) {
      const auto abs = by_key.find(definitions::definition_key(a.arxiv_id, term, DefinitionMode::abstract_only));
      const auto rag = by_key.find(definitions::definition_key(a.arxiv_id, term, DefinitionMode::rag));
      if (abs == by_key.end() || rag == by_key.end()) {
        ++result.missing_definitions;
        continue;
      }
      const definitions::PairContext ctx{definitions::make_pair_id(a.reader_id, a.arxiv_id, term), a.reader_id,
                                         article.abstract};
      if (!ids.insert(ctx.pair_id).second) continue;
      if (rag->second->status == definitions::Status::ok) {
        pairs.push_back(definitions::make_blind_pair(*abs->second, *rag->second, options.seed, ctx));
      } else {
        pairs.push_back(definitions::make_accuracy_only_item(*abs->second, *rag->second, options.seed, ctx));
        ++result.accuracy_only;
      }
    }
  }
  result.pairs = pairs.size();
  return pairs;
}

inline PairsResult make_pairs(const Workspace& ws, const PairsOptions& options) {
  if (!options.force && !read_jsonl(ws.judgments_file()).empty() && fs::exists(ws.key_file())) {
    throw ConflictError(fmt::format("{} already holds judgments against the current pairs; pass --force to replace",
                                    ws.judgments_file().string()));
  }
  const CorpusStore store = load_corpus(ws);
  PairsResult result;
  const auto pairs =
      build_pairs(jargon::load_annotations(ws.annotations_file(jargon::to_string(options.source))),
                  definitions::load_definitions(ws.definitions_file()), store, options, result);
  definitions::save_pairs(ws.pairs_file(), ws.key_file(), pairs);
  return result;
}

// ---------------------------------------------------------------------------
// evaluate

inline std::string evaluate_accuracy(const fs::path& judgments, const fs::path& key) {
  return evaluation::accuracy_csv(
      evaluation::accuracy_summary(evaluation::load_judgments(judgments), definitions::KeyStore::load(key)));
}

inline std::string evaluate_quality(const fs::path& judgments, const fs::path& key) {
  return evaluation::quality_csv(
      evaluation::win_loss_tie(evaluation::load_judgments(judgments), definitions::KeyStore::load(key)));
}

inline std::string evaluate_counts(const std::vector<fs::path>& annotation_files) {
  std::vector<JargonAnnotation> all;
  for (const auto& f : annotation_files) {
    auto part = jargon::load_annotations(f);
    all.insert(all.end(), part.begin(), part.end());
  }
  return jargon::count_report_csv(jargon::count_report(all));
}

/// Human-vs-model comparisons: paired per-abstract term counts (signed rank)
/// and pooled term word lengths (rank sum).
inline std::string evaluate_stats(const fs::path& human_file, const fs::path& model_file) {
  const auto human = annotations_by_key(jargon::load_annotations(human_file));
  const auto model = annotations_by_key(jargon::load_annotations(model_file));

  evaluation::PairedSample counts;
  std::vector<double> human_lengths;
  std::vector<double> model_lengths;
  std::vector<double> human_counts;
  std::vector<double> model_counts;
  for (const auto& [key, h] : human) {
    const auto it = model.find(key);
    if (it == model.end()) continue;
    counts.pairs.emplace_back(static_cast<double>(h.terms.size()), static_cast<double>(it->second.terms.size()));
    human_counts.push_back(static_cast<double>(h.terms.size()));
    model_counts.push_back(static_cast<double>(it->second.terms.size()));
    for (const auto& t : h.terms) human_lengths.push_back(static_cast<double>(jargon::word_count(t)));
    for (const auto& t : it->second.terms) model_lengths.push_back(static_cast<double>(jargon::word_count(t)));
  }
  require(!counts.pairs.empty(), "stats: no (article, reader) has both human and model annotations");

  csv::Table table({"test", "quantity", "n_human", "n_model", "median_human", "median_model", "mean_human",
                    "mean_model", "statistic", "p_value", "method", "n_effective"});
  const auto row = [&](const std::string& test, const std::string& quantity, const std::vector<double>& h,
                       const std::vector<double>& m, const std::optional<evaluation::TestResult>& r) {
    const auto dh = evaluation::descriptives(h);
    const auto dm = evaluation::descriptives(m);
    table.add_row({test, quantity, std::to_string(dh.count), std::to_string(dm.count), csv::number(dh.median),
                   csv::number(dm.median), csv::number(dh.mean), csv::number(dm.mean),
                   r ? csv::number(r->statistic) : "", r ? csv::number(r->p_value, 6) : "",
                   r ? evaluation::to_string(r->method) : "degenerate", r ? std::to_string(r->n_effective) : "0"});
  };

  std::optional<evaluation::TestResult> w;
  try {
    w = evaluation::wilcoxon_signed_rank(counts);
  } catch (const PreconditionError&) {
    // Every pair equal: no test, the row still reports the descriptives.
  }
  row("wilcoxon_signed_rank", "terms_per_abstract", human_counts, model_counts, w);

  std::optional<evaluation::TestResult> u;
  if (!human_lengths.empty() && !model_lengths.empty()) u = evaluation::mann_whitney_u(human_lengths, model_lengths);
  if (!human_lengths.empty() && !model_lengths.empty()) {
    row("mann_whitney_u", "words_per_term", human_lengths, model_lengths, u);
  }
  return table.str();
}

// ---------------------------------------------------------------------------
// annotate

inline std::size_t annotate(const fs::path& pairs_file, const fs::path& judgments_file, const std::string& reader_id,
                            std::istream& in, std::ostream& out, const evaluation::CaptureOptions& options = {}) {
  // Parse the whole pairs file first: a corrupt file fails before any prompt.
  const auto pairs = definitions::load_pairs(pairs_file);
  evaluation::JudgmentLog log(judgments_file);
  return evaluation::capture_judgments(pairs, reader_id, log, in, out, options);
}

}  // namespace dejargon::app

#endif  // DEJARGON_APP_COMMANDS_HPP
