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

// Choosing which harvested records enter the study: the peer-review filter
// and the per-category stratified test/dev split.

#ifndef DEJARGON_CORPUS_SELECTION_HPP
#define DEJARGON_CORPUS_SELECTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/hash.hpp"
#include "dejargon/core/text.hpp"
#include "dejargon/corpus/article.hpp"

namespace dejargon::corpus {

/// Case-insensitive keywords that mark an author comment as a report of
/// acceptance or publication.
struct PeerReviewRules {
  std::vector<std::string> keywords = {"accept", "to appear", "published in", "camera-ready",
                                       "proceedings of"};

  bool matches(const std::optional<std::string>& comments) const {
    if (!comments) return false;
    return std::any_of(keywords.begin(), keywords.end(),
                       [&](const std::string& k) { return text::icontains_ascii(*comments, k); });
  }
};

inline std::vector<ArticleRecord> filter_peer_reviewed(const std::vector<ArticleRecord>& records,
                                                       const PeerReviewRules& rules = {}) {
  std::vector<ArticleRecord> kept;
  std::copy_if(records.begin(), records.end(), std::back_inserter(kept),
               [&](const ArticleRecord& r) { return rules.matches(r.comments); });
  return kept;
}

struct SampleSplit {
  std::vector<ArticleRecord> test;
  std::vector<ArticleRecord> dev;
};

/// Size of the test share of one stratum: fraction * n, halves rounded away
/// from zero (102 * 0.25 = 25.5 -> 26).
inline std::size_t stratum_quota(std::size_t stratum_size, double fraction) {
  return static_cast<std::size_t>(std::round(fraction * static_cast<double>(stratum_size)));
}

/// Within each primary category, draws `stratum_quota` records uniformly
/// without replacement. Strata are visited in category order and each is
/// pre-sorted by arxiv_id, so the outcome depends only on the record set and
/// the seed. Both outputs are sorted by arxiv_id.
inline SampleSplit stratified_sample(const std::vector<ArticleRecord>& records, double fraction,
                                     std::uint64_t seed) {
  if (records.empty()) throw PreconditionError("stratified_sample: no records");
  require(fraction > 0.0 && fraction <= 1.0, "stratified_sample: fraction must be in (0, 1]");

  std::map<std::string, std::vector<const ArticleRecord*>> strata;
  for (const auto& r : records) {
    require(!r.primary_category.empty(),
            fmt::format("stratified_sample: {} has no primary category", r.arxiv_id));
    strata[r.primary_category].push_back(&r);
  }

  std::mt19937_64 engine(seed);
  SampleSplit split;
  for (auto& [category, members] : strata) {
    std::sort(members.begin(), members.end(),
              [](const ArticleRecord* a, const ArticleRecord* b) { return a->arxiv_id < b->arxiv_id; });
    const std::size_t quota = stratum_quota(members.size(), fraction);
    // Partial Fisher-Yates: the first `quota` slots become the sample.
    for (std::size_t i = 0; i < quota; ++i) {
      const std::size_t j = i + uniform_below(engine, members.size() - i);
      std::swap(members[i], members[j]);
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      (i < quota ? split.test : split.dev).push_back(*members[i]);
    }
  }
  const auto by_id = [](const ArticleRecord& a, const ArticleRecord& b) { return a.arxiv_id < b.arxiv_id; };
  std::sort(split.test.begin(), split.test.end(), by_id);
  std::sort(split.dev.begin(), split.dev.end(), by_id);
  return split;
}

}  // namespace dejargon::corpus

#endif  // DEJARGON_CORPUS_SELECTION_HPP
