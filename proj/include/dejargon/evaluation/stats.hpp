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

// Rank tests: Wilcoxon signed-rank (paired) and Mann-Whitney U (unpaired).
//
// Ties get mid-ranks. Internally every rank is doubled so mid-ranks such as
// 1.5 become integers and the exact null distributions can be counted with
// integer dynamic programming; exact p-values are then ratios of counts and
// are reported as such.
//
// Exact enumeration is used when the effective sample is small (Wilcoxon:
// nonzero differences <= 12; Mann-Whitney: na + nb <= 12), otherwise the
// normal approximation with tie-corrected variance and a 0.5 continuity
// correction.

#ifndef DEJARGON_EVALUATION_STATS_HPP
#define DEJARGON_EVALUATION_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iterator>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"

namespace dejargon::evaluation {

enum class Alternative { two_sided, greater, less };

inline std::string to_string(Alternative a) {
  switch (a) {
    case Alternative::two_sided: return "two_sided";
    case Alternative::greater: return "greater";
    case Alternative::less: return "less";
  }
  return "two_sided";
}

inline Alternative alternative_from_string(const std::string& s) {
  if (s == "two_sided" || s == "two-sided") return Alternative::two_sided;
  if (s == "greater") return Alternative::greater;
  if (s == "less") return Alternative::less;
  throw PreconditionError(fmt::format("unknown alternative '{}'", s));
}

enum class TestMethod { exact, normal_approx };

inline std::string to_string(TestMethod m) { return m == TestMethod::exact ? "exact" : "normal_approx"; }

/// `automatic` applies the small-sample cutoff.
enum class MethodChoice { automatic, exact, normal_approx };

inline constexpr std::size_t kExactCutoff = 12;

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  TestMethod method = TestMethod::exact;
  std::size_t n_effective = 0;
  /// Exact method only: p_value == p_count / p_total.
  std::uint64_t p_count = 0;
  std::uint64_t p_total = 0;
};

struct PairedSample {
  std::vector<std::pair<double, double>> pairs;
};

/// Doubled mid-ranks of `values` (1-based ranks, so the smallest of n
/// distinct values gets 2) and the tie-group sizes.
struct DoubledRanks {
  std::vector<std::int64_t> ranks;
  std::vector<std::size_t> tie_groups;
};

inline DoubledRanks doubled_midranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  DoubledRanks out;
  out.ranks.assign(values.size(), 0);
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Ranks i+1..j+1 share their mean; doubled that is i + j + 2.
    const auto doubled = static_cast<std::int64_t>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) out.ranks[order[k]] = doubled;
    out.tie_groups.push_back(j - i + 1);
    i = j + 1;
  }
  return out;
}

inline double tie_term(const std::vector<std::size_t>& groups) {
  double sum = 0.0;
  for (std::size_t t : groups) {
    const double td = static_cast<double>(t);
    sum += td * td * td - td;
  }
  return sum;
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace detail {

/// p-value of a statistic with mean `mean` and standard deviation `sd`
/// under the normal approximation, continuity-corrected by 0.5.
inline double normal_p(double observed, double mean, double sd, Alternative alt) {
  if (!(sd > 0.0)) return 1.0;
  double p = 1.0;
  switch (alt) {
    case Alternative::two_sided: {
      const double z = std::max(0.0, std::abs(observed - mean) - 0.5) / sd;
      p = 2.0 * (1.0 - normal_cdf(z));
      break;
    }
    case Alternative::greater:
      p = 1.0 - normal_cdf((observed - mean - 0.5) / sd);
      break;
    case Alternative::less:
      p = normal_cdf((observed - mean + 0.5) / sd);
      break;
  }
  return std::clamp(p, 0.0, 1.0);
}

/// Counts null outcomes at least as extreme as `observed`, all quantities
/// doubled. `dist[s]` is the number of outcomes whose doubled statistic is s
/// and `center2` is twice the doubled null mean.
inline std::uint64_t count_extreme(const std::vector<std::uint64_t>& dist, std::int64_t observed,
                                   std::int64_t center2, Alternative alt) {
  std::uint64_t count = 0;
  const std::int64_t obs_dev = std::llabs(2 * observed - center2);
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist[s] == 0) continue;
    const auto si = static_cast<std::int64_t>(s);
    bool extreme = false;
    switch (alt) {
      case Alternative::two_sided: extreme = std::llabs(2 * si - center2) >= obs_dev; break;
      case Alternative::greater: extreme = si >= observed; break;
      case Alternative::less: extreme = si <= observed; break;
    }
    if (extreme) count += dist[s];
  }
  return count;
}

}  // namespace detail

/// Paired test on x - y. Zero differences are discarded. The reported
/// statistic is min(W+, W-); the p-value refers to W+ (large W+ supports
/// `greater`, i.e. x tends to exceed y).
inline TestResult wilcoxon_signed_rank(const PairedSample& sample, Alternative alt = Alternative::two_sided,
                                       MethodChoice choice = MethodChoice::automatic) {
  require(!sample.pairs.empty(), "wilcoxon: empty sample");
  std::vector<double> magnitudes;
  std::vector<bool> positive;
  for (const auto& [x, y] : sample.pairs) {
    require(std::isfinite(x) && std::isfinite(y), "wilcoxon: non-finite value");
    const double d = x - y;
    if (d == 0.0) continue;
    magnitudes.push_back(std::abs(d));
    positive.push_back(d > 0.0);
  }
  const std::size_t n = magnitudes.size();
  if (n == 0) throw PreconditionError("wilcoxon: degenerate sample (all differences are zero)");

  const DoubledRanks ranked = doubled_midranks(magnitudes);
  std::int64_t w_plus2 = 0;
  std::int64_t total2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total2 += ranked.ranks[i];
    if (positive[i]) w_plus2 += ranked.ranks[i];
  }
  TestResult r;
  r.n_effective = n;
  r.statistic = static_cast<double>(std::min(w_plus2, total2 - w_plus2)) / 2.0;

  const bool exact = choice == MethodChoice::exact || (choice == MethodChoice::automatic && n <= kExactCutoff);
  if (exact) {
    require(n <= 62, "wilcoxon: exact enumeration limited to 62 nonzero differences");
    // dist[s]: sign assignments whose doubled positive-rank sum is s.
    std::vector<std::uint64_t> dist(static_cast<std::size_t>(total2) + 1, 0);
    dist[0] = 1;
    std::int64_t reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t rank = ranked.ranks[i];
      for (std::int64_t s = reach; s >= 0; --s) dist[static_cast<std::size_t>(s + rank)] += dist[static_cast<std::size_t>(s)];
      reach += rank;
    }
    r.method = TestMethod::exact;
    r.p_count = detail::count_extreme(dist, w_plus2, total2, alt);
    r.p_total = std::uint64_t{1} << n;
    r.p_value = static_cast<double>(r.p_count) / static_cast<double>(r.p_total);
    return r;
  }

  const double nd = static_cast<double>(n);
  const double mean = nd * (nd + 1.0) / 4.0;
  const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term(ranked.tie_groups) / 48.0;
  r.method = TestMethod::normal_approx;
  r.p_value = detail::normal_p(static_cast<double>(w_plus2) / 2.0, mean, std::sqrt(std::max(var, 0.0)), alt);
  return r;
}

/// U_a = #{(x in a, y in b): x > y} + 0.5 * #{x == y}. `greater` means a
/// tends to exceed b.
inline TestResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b,
                                 Alternative alt = Alternative::two_sided,
                                 MethodChoice choice = MethodChoice::automatic) {
  require(!a.empty() && !b.empty(), "mann_whitney: both samples must be non-empty");
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  for (double v : pooled) require(std::isfinite(v), "mann_whitney: non-finite value");
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na + nb;

  const DoubledRanks ranked = doubled_midranks(pooled);
  std::int64_t rank_sum2 = 0;
  for (std::size_t i = 0; i < na; ++i) rank_sum2 += ranked.ranks[i];
  const auto na_i = static_cast<std::int64_t>(na);
  const std::int64_t u2 = rank_sum2 - na_i * (na_i + 1);  // doubled U_a

  TestResult r;
  r.n_effective = n;
  r.statistic = static_cast<double>(u2) / 2.0;
  const std::int64_t max_u2 = 2 * na_i * static_cast<std::int64_t>(nb);

  const bool exact = choice == MethodChoice::exact || (choice == MethodChoice::automatic && n <= kExactCutoff);
  if (exact) {
    require(n <= 60, "mann_whitney: exact enumeration limited to 60 observations");
    // ways[k][s]: subsets of size k of the pooled ranks with doubled sum s.
    std::int64_t total2 = 0;
    for (auto rk : ranked.ranks) total2 += rk;
    std::vector<std::vector<std::uint64_t>> ways(na + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(total2) + 1, 0));
    ways[0][0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const auto rk = static_cast<std::size_t>(ranked.ranks[i]);
      for (std::size_t k = std::min(i + 1, na); k >= 1; --k) {
        for (std::size_t s = ways[k].size(); s-- > rk;) ways[k][s] += ways[k - 1][s - rk];
      }
    }
    // Re-index by doubled U.
    std::vector<std::uint64_t> dist(static_cast<std::size_t>(max_u2) + 1, 0);
    std::uint64_t total = 0;
    for (std::size_t s = 0; s < ways[na].size(); ++s) {
      if (ways[na][s] == 0) continue;
      const std::int64_t u = static_cast<std::int64_t>(s) - na_i * (na_i + 1);
      dist[static_cast<std::size_t>(u)] += ways[na][s];
      total += ways[na][s];
    }
    r.method = TestMethod::exact;
    r.p_count = detail::count_extreme(dist, u2, max_u2, alt);
    r.p_total = total;
    r.p_value = static_cast<double>(r.p_count) / static_cast<double>(r.p_total);
    return r;
  }

  const double nad = static_cast<double>(na);
  const double nbd = static_cast<double>(nb);
  const double nd = static_cast<double>(n);
  const double mean = nad * nbd / 2.0;
  const double var = nad * nbd / 12.0 * ((nd + 1.0) - tie_term(ranked.tie_groups) / (nd * (nd - 1.0)));
  r.method = TestMethod::normal_approx;
  r.p_value = detail::normal_p(r.statistic, mean, std::sqrt(std::max(var, 0.0)), alt);
  return r;
}

struct Descriptives {
  double median = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

/// NaN entries (undefined metrics) are dropped before summarizing.
inline Descriptives descriptives(const std::vector<double>& values) {
  std::vector<double> kept;
  std::copy_if(values.begin(), values.end(), std::back_inserter(kept), [](double v) { return !std::isnan(v); });
  if (kept.empty()) throw PreconditionError("descriptives: no defined values");
  std::sort(kept.begin(), kept.end());
  Descriptives d;
  d.count = kept.size();
  const std::size_t mid = kept.size() / 2;
  d.median = kept.size() % 2 == 1 ? kept[mid] : (kept[mid - 1] + kept[mid]) / 2.0;
  d.mean = std::accumulate(kept.begin(), kept.end(), 0.0) / static_cast<double>(kept.size());
  return d;
}

inline Descriptives descriptives(const std::vector<std::optional<double>>& values) {
  std::vector<double> defined;
  for (const auto& v : values) {
    if (v) defined.push_back(*v);
  }
  return descriptives(defined);
}

}  // namespace dejargon::evaluation

#endif  // DEJARGON_EVALUATION_STATS_HPP
