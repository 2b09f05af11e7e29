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

// Scoring model-identified jargon against a reader's own annotation.

#ifndef DEJARGON_JARGON_SCORING_HPP
#define DEJARGON_JARGON_SCORING_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/csv.hpp"
#include "dejargon/core/error.hpp"
#include "dejargon/jargon/annotation.hpp"

namespace dejargon::jargon {

/// When does a predicted term count as hitting a gold term?
///   exact:       normalized strings are equal.
///   subsumption: the tokens of one term are an order-preserving
///                subsequence of the other's ("monte carlo search" and
///                "monte carlo tree search" match).
enum class MatchPolicy { exact, subsumption };

inline std::string to_string(MatchPolicy p) { return p == MatchPolicy::exact ? "exact" : "subsumption"; }

inline MatchPolicy match_policy_from_string(const std::string& s) {
  if (s == "exact") return MatchPolicy::exact;
  if (s == "subsumption") return MatchPolicy::subsumption;
  throw PreconditionError(fmt::format("unknown match policy '{}'", s));
}

inline bool is_token_subsequence(const std::vector<std::string>& small, const std::vector<std::string>& large) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < large.size() && i < small.size(); ++j) {
    if (small[i] == large[j]) ++i;
  }
  return i == small.size();
}

/// Both arguments must already be normalized.
inline bool terms_match(const std::string& a, const std::string& b, MatchPolicy policy) {
  if (a == b) return true;
  if (policy == MatchPolicy::exact) return false;
  const auto ta = text::split_whitespace(a);
  const auto tb = text::split_whitespace(b);
  if (ta.empty() || tb.empty()) return false;
  return ta.size() <= tb.size() ? is_token_subsequence(ta, tb) : is_token_subsequence(tb, ta);
}

/// Precision, recall and F2 (beta = 2). A ratio whose denominator is zero is
/// undefined (nullopt) rather than 0 or 1.
struct ScoreReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f2;

  static ScoreReport from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    ScoreReport r{tp, fp, fn, std::nullopt, std::nullopt, std::nullopt};
    if (tp + fp > 0) r.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0) r.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (r.precision && r.recall) {
      const double p = *r.precision;
      const double rec = *r.recall;
      if (4.0 * p + rec > 0.0) {
        r.f2 = 5.0 * p * rec / (4.0 * p + rec);
      } else {
        r.f2 = 0.0;
      }
    }
    return r;
  }
};

/// Size of a maximum matching in the bipartite graph where left i and right j
/// are adjacent when `adjacent(i, j)`. Kuhn's augmenting paths; the term sets
/// per abstract are small.
inline std::size_t maximum_matching(std::size_t left, std::size_t right,
                                    const std::function<bool(std::size_t, std::size_t)>& adjacent) {
  std::vector<std::vector<std::size_t>> edges(left);
  for (std::size_t i = 0; i < left; ++i) {
    for (std::size_t j = 0; j < right; ++j) {
      if (adjacent(i, j)) edges[i].push_back(j);
    }
  }
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(right, kFree);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j : edges[i]) {
      if (visited[j]) continue;
      visited[j] = 1;
      if (owner[j] == kFree || augment(owner[j])) {
        owner[j] = i;
        return true;
      }
    }
    return false;
  };
  std::size_t matched = 0;
  for (std::size_t i = 0; i < left; ++i) {
    visited.assign(right, 0);
    if (augment(i)) ++matched;
  }
  return matched;
}

/// Distinct normalized forms, in first-seen order.
inline std::vector<std::string> normalized_terms(const std::vector<std::string>& terms) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& t : terms) {
    std::string n = normalize_term(t);
    if (!n.empty() && seen.insert(n).second) out.push_back(std::move(n));
  }
  return out;
}

/// Scores raw term lists. Each gold term can absorb at most one prediction
/// and vice versa; tp is the size of the best such one-to-one pairing.
inline ScoreReport score_terms(const std::vector<std::string>& predicted, const std::vector<std::string>& gold,
                               MatchPolicy policy = MatchPolicy::exact) {
  const auto p = normalized_terms(predicted);
  const auto g = normalized_terms(gold);
  const std::size_t tp =
      maximum_matching(p.size(), g.size(), [&](std::size_t i, std::size_t j) { return terms_match(p[i], g[j], policy); });
  return ScoreReport::from_counts(tp, p.size() - tp, g.size() - tp);
}

inline ScoreReport score(const JargonAnnotation& predicted, const JargonAnnotation& gold,
                         MatchPolicy policy = MatchPolicy::exact) {
  if (predicted.arxiv_id != gold.arxiv_id || predicted.reader_id != gold.reader_id) {
    throw PreconditionError(fmt::format("score: prediction ({}, {}) and gold ({}, {}) disagree", predicted.arxiv_id,
                                        predicted.reader_id, gold.arxiv_id, gold.reader_id));
  }
  require(predicted.source == Source::model, "score: prediction must come from the model");
  require(gold.source == Source::human, "score: gold must come from a human annotator");
  return score_terms(predicted.terms, gold.terms, policy);
}

struct CountRow {
  std::string arxiv_id;
  std::string reader_id;
  Source source = Source::model;
  std::size_t term_count = 0;
  std::optional<double> mean_words_per_term;
};

/// One row per annotation, ordered by (arxiv_id, reader_id, source).
inline std::vector<CountRow> count_report(const std::vector<JargonAnnotation>& annotations) {
  std::vector<CountRow> rows;
  for (const auto& a : annotations) {
    CountRow row{a.arxiv_id, a.reader_id, a.source, a.terms.size(), std::nullopt};
    if (!a.terms.empty()) {
      std::size_t words = 0;
      for (const auto& t : a.terms) words += word_count(t);
      row.mean_words_per_term = static_cast<double>(words) / static_cast<double>(a.terms.size());
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const CountRow& x, const CountRow& y) {
    return std::tie(x.arxiv_id, x.reader_id, x.source) < std::tie(y.arxiv_id, y.reader_id, y.source);
  });
  return rows;
}

inline std::string count_report_csv(const std::vector<CountRow>& rows) {
  csv::Table table({"arxiv_id", "reader_id", "source", "term_count", "mean_words_per_term"});
  for (const auto& r : rows) {
    table.add_row({r.arxiv_id, r.reader_id, to_string(r.source), std::to_string(r.term_count),
                   csv::number(r.mean_words_per_term)});
  }
  return table.str();
}

}  // namespace dejargon::jargon

#endif  // DEJARGON_JARGON_SCORING_HPP
