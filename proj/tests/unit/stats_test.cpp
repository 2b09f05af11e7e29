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

#include <random>

#include "dejargon/evaluation/stats.hpp"
#include "support/oracles.hpp"

namespace dejargon::evaluation {
namespace {

PairedSample from_differences(const std::vector<double>& d) {
  PairedSample s;
  for (double x : d) s.pairs.emplace_back(x, 0.0);
  return s;
}

int alt_code(Alternative a) { return a == Alternative::two_sided ? 0 : (a == Alternative::greater ? 1 : 2); }

constexpr Alternative kAlternatives[] = {Alternative::two_sided, Alternative::greater, Alternative::less};

TEST(Wilcoxon, AllPositiveExample) {
  const auto r = wilcoxon_signed_rank(from_differences({1, 2, 3}));
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.method, TestMethod::exact);
  EXPECT_EQ(r.p_count * 8, 2 * r.p_total);
  EXPECT_DOUBLE_EQ(r.p_value, 0.25);
  EXPECT_EQ(r.n_effective, 3u);
}

TEST(Wilcoxon, SymmetricTieExample) {
  const auto r = wilcoxon_signed_rank(from_differences({1, -1}));
  EXPECT_EQ(r.statistic, 1.5);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

TEST(Wilcoxon, ZeroDifferencesAreDropped) {
  const auto r = wilcoxon_signed_rank(from_differences({0, 1, 2, 0, 3}));
  EXPECT_EQ(r.n_effective, 3u);
  EXPECT_DOUBLE_EQ(r.p_value, 0.25);
  EXPECT_THROW(wilcoxon_signed_rank(from_differences({0, 0, 0})), PreconditionError);
  EXPECT_THROW(wilcoxon_signed_rank(PairedSample{}), PreconditionError);
  EXPECT_THROW(wilcoxon_signed_rank(from_differences({1, std::nan("")})), PreconditionError);
}

TEST(Wilcoxon, OneSidedDirections) {
  const auto greater = wilcoxon_signed_rank(from_differences({1, 2, 3}), Alternative::greater);
  const auto less = wilcoxon_signed_rank(from_differences({1, 2, 3}), Alternative::less);
  EXPECT_DOUBLE_EQ(greater.p_value, 1.0 / 8);
  EXPECT_DOUBLE_EQ(less.p_value, 1.0);
}

TEST(Wilcoxon, MethodSelection) {
  std::vector<double> d;
  for (int i = 1; i <= 12; ++i) d.push_back(i % 3 == 0 ? -i : i);
  EXPECT_EQ(wilcoxon_signed_rank(from_differences(d)).method, TestMethod::exact);
  d.push_back(13);
  EXPECT_EQ(wilcoxon_signed_rank(from_differences(d)).method, TestMethod::normal_approx);
  EXPECT_EQ(wilcoxon_signed_rank(from_differences(d), Alternative::two_sided, MethodChoice::exact).method,
            TestMethod::exact);
}

TEST(Wilcoxon, ExactMatchesEnumerationOracleWithTies) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<double> d(n);
    for (double& x : d) x = static_cast<double>(static_cast<int>(rng() % 9) - 4);
    if (std::all_of(d.begin(), d.end(), [](double x) { return x == 0; })) d[0] = 1;
    for (Alternative alt : kAlternatives) {
      const auto got = wilcoxon_signed_rank(from_differences(d), alt, MethodChoice::exact);
      const auto expected = oracle::wilcoxon(d, alt_code(alt));
      ASSERT_TRUE(expected.equals(got.p_count, got.p_total)) << "trial " << trial;
    }
  }
}

TEST(Wilcoxon, StatisticBounds) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    std::vector<double> d(n);
    for (double& x : d) x = nd(rng);
    const auto r = wilcoxon_signed_rank(from_differences(d));
    const double nn = static_cast<double>(r.n_effective);
    EXPECT_GE(r.statistic, 0.0);
    EXPECT_LE(r.statistic, nn * (nn + 1) / 4);
    EXPECT_GE(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
  }
}

TEST(MannWhitney, SeparatedExample) {
  const auto r = mann_whitney_u({1, 2}, {3, 4});
  EXPECT_EQ(r.statistic, 0.0);
  EXPECT_EQ(r.p_count * 6, 2 * r.p_total);
  EXPECT_NEAR(r.p_value, 1.0 / 3, 1e-15);
}

TEST(MannWhitney, TiedSingletons) {
  const auto r = mann_whitney_u({5}, {5});
  EXPECT_EQ(r.statistic, 0.5);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
}

TEST(MannWhitney, IdenticalSamplesSitAtTheCenter) {
  const std::vector<double> a = {1, 4, 2, 8, 5};
  const auto r = mann_whitney_u(a, a);
  EXPECT_EQ(r.statistic, 12.5);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
  EXPECT_THROW(mann_whitney_u({}, a), PreconditionError);
}

TEST(MannWhitney, ExactMatchesEnumerationOracleWithTies) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t na = 1 + rng() % 4;
    const std::size_t nb = 1 + rng() % 4;
    std::vector<double> a(na);
    std::vector<double> b(nb);
    for (double& x : a) x = static_cast<double>(rng() % 5);
    for (double& x : b) x = static_cast<double>(rng() % 5);
    for (Alternative alt : kAlternatives) {
      const auto got = mann_whitney_u(a, b, alt, MethodChoice::exact);
      ASSERT_EQ(got.statistic * 2, static_cast<double>(oracle::doubled_u(a, b)));
      const auto expected = oracle::mann_whitney(a, b, alt_code(alt));
      ASSERT_TRUE(expected.equals(got.p_count, got.p_total)) << "trial " << trial;
    }
  }
}

TEST(MannWhitney, StatisticBoundsAndSymmetry) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(1 + rng() % 10);
    std::vector<double> b(1 + rng() % 10);
    for (double& x : a) x = static_cast<double>(rng() % 7);
    for (double& x : b) x = static_cast<double>(rng() % 7);
    const auto ab = mann_whitney_u(a, b);
    const auto ba = mann_whitney_u(b, a);
    const double nanb = static_cast<double>(a.size() * b.size());
    EXPECT_GE(ab.statistic, 0.0);
    EXPECT_LE(ab.statistic, nanb);
    EXPECT_DOUBLE_EQ(ab.statistic + ba.statistic, nanb);
    EXPECT_NEAR(ab.p_value, ba.p_value, 1e-12);
  }
}

// The approximation is a sanity bound on tie-free data. Below six
// observations the Mann-Whitney normal curve can miss by more than 0.05, so
// the property covers sample sizes six through the exact cutoff.
TEST(NormalApproximation, CloseToExactOnTieFreeSamples) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 6 + rng() % 7;
    PairedSample paired;
    for (std::size_t i = 0; i < n; ++i) paired.pairs.emplace_back(nd(rng) + 0.3, nd(rng));
    std::vector<double> a(n / 2);
    std::vector<double> b(n - n / 2);
    for (double& x : a) x = nd(rng) + 0.5;
    for (double& x : b) x = nd(rng);
    for (Alternative alt : kAlternatives) {
      const double w_exact = wilcoxon_signed_rank(paired, alt, MethodChoice::exact).p_value;
      const double w_approx = wilcoxon_signed_rank(paired, alt, MethodChoice::normal_approx).p_value;
      EXPECT_LE(std::abs(w_exact - w_approx), 0.05) << "wilcoxon n=" << n;
      const double m_exact = mann_whitney_u(a, b, alt, MethodChoice::exact).p_value;
      const double m_approx = mann_whitney_u(a, b, alt, MethodChoice::normal_approx).p_value;
      EXPECT_LE(std::abs(m_exact - m_approx), 0.05) << "mann-whitney n=" << n;
    }
  }
}

TEST(NormalApproximation, HandComputedValue) {
  // n = 13 differences 1..13, all positive: W+ = 91, mean 45.5,
  // variance 13*14*27/24 = 204.75; z = (91 - 45.5 - 0.5) / sqrt(204.75).
  std::vector<double> d;
  for (int i = 1; i <= 13; ++i) d.push_back(i);
  const auto r = wilcoxon_signed_rank(from_differences(d), Alternative::greater);
  EXPECT_EQ(r.method, TestMethod::normal_approx);
  EXPECT_NEAR(r.p_value, 0.5 * std::erfc(45.0 / std::sqrt(204.75) / std::sqrt(2.0)), 1e-12);
}

TEST(Descriptives, Examples) {
  const auto odd = descriptives(std::vector<double>{3, 1, 2});
  EXPECT_EQ(odd.median, 2.0);
  EXPECT_EQ(odd.mean, 2.0);
  EXPECT_EQ(odd.count, 3u);
  const auto even = descriptives(std::vector<double>{4, 1, 2, 3});
  EXPECT_EQ(even.median, 2.5);
  EXPECT_EQ(even.mean, 2.5);
  const auto with_gaps = descriptives(std::vector<std::optional<double>>{1.0, std::nullopt, 0.5});
  EXPECT_EQ(with_gaps.count, 2u);
  EXPECT_EQ(with_gaps.median, 0.75);
  EXPECT_EQ(descriptives(std::vector<double>{1, std::nan(""), 3}).count, 2u);
  EXPECT_THROW(descriptives(std::vector<double>{}), PreconditionError);
  EXPECT_THROW(descriptives(std::vector<std::optional<double>>{std::nullopt}), PreconditionError);
}

TEST(Alternatives, Strings) {
  EXPECT_EQ(alternative_from_string("greater"), Alternative::greater);
  EXPECT_EQ(to_string(Alternative::two_sided), "two_sided");
  EXPECT_THROW(alternative_from_string("bigger"), Error);
}

}  // namespace
}  // namespace dejargon::evaluation
