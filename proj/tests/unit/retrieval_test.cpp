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

#include "dejargon/retrieval/retrieval.hpp"
#include "support/oracles.hpp"
#include "support/stub_llm.hpp"
#include "support/temp_dir.hpp"

namespace dejargon::retrieval {
namespace {

using testing_support::TempDir;

Chunk chunk_with(std::size_t index, std::vector<double> v, const std::string& text = "t") {
  Chunk c;
  c.arxiv_id = "x";
  c.chunk_index = index;
  c.char_start = index * 10;
  c.char_end = index * 10 + text.size();
  c.text = text;
  c.vector.values = std::move(v);
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> windows(const std::vector<Chunk>& chunks) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& c : chunks) out.emplace_back(c.char_start, c.char_end);
  return out;
}

/// Replay-mode gateway that knows exactly the given embeddings.
struct EmbeddingFixtures {
  TempDir dir;
  std::unique_ptr<llm::Gateway> gateway;

  explicit EmbeddingFixtures(const std::map<std::string, std::vector<double>>& vectors) {
    llm::ReplayCache cache(dir.path());
    const llm::ModelConfig config;
    for (const auto& [text, v] : vectors) {
      const json request = {{"model", config.embed_model}, {"input", text}};
      cache.store(llm::request_key("embedding", request), request, json{{"embedding", v}});
    }
    llm::GatewayConfig gc;
    gc.mode = llm::Mode::replay;
    gc.fixtures_dir = dir.path();
    gateway = std::make_unique<llm::Gateway>(gc, std::make_shared<llm::NoNetworkTransport>());
  }
};

TEST(Chunker, StrideExample) {
  const std::string text(1000, 'a');
  EXPECT_EQ(windows(chunk_fulltext(text, {400, 100})),
            (std::vector<std::pair<std::size_t, std::size_t>>{{0, 400}, {300, 700}, {600, 1000}}));
}

TEST(Chunker, EmptyAndShortTexts) {
  EXPECT_TRUE(chunk_fulltext("", {400, 100}).empty());
  EXPECT_EQ(windows(chunk_fulltext(std::string(200, 'a'), {400, 100})),
            (std::vector<std::pair<std::size_t, std::size_t>>{{0, 200}}));
  EXPECT_THROW(chunk_fulltext("abc", {10, 10}), PreconditionError);
  EXPECT_THROW(chunk_fulltext("abc", {0, 0}), PreconditionError);
}

TEST(Chunker, CountsCodePointsNotBytes) {
  const std::string text = "ééééé";  // 5 code points, 10 bytes
  const auto chunks = chunk_fulltext(text, {2, 0});
  ASSERT_EQ(chunks.size(), 3u);
  EXPECT_EQ(chunks[0].text, "éé");
  EXPECT_EQ(chunks[2].text, "é");
  EXPECT_EQ(chunks[2].char_end, 10u);
}

TEST(Chunker, ReconstructionAndWindowProperties) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> alphabet = {"a", "b", " ", "\n", "é", "中", "😀", "."};
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    const std::size_t cps = rng() % 600;
    for (std::size_t i = 0; i < cps; ++i) text += alphabet[rng() % alphabet.size()];
    const std::size_t size = 1 + rng() % 80;
    const std::size_t overlap = rng() % size;
    const auto chunks = chunk_fulltext(text, {size, overlap}, "doc");
    ASSERT_EQ(oracle::reconstruct(chunks), text) << "trial " << trial;
    const auto offsets = text::code_point_offsets(text);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      const auto& c = chunks[i];
      ASSERT_LT(c.char_start, c.char_end);
      ASSERT_EQ(c.text, text.substr(c.char_start, c.char_end - c.char_start));
      ASSERT_EQ(c.chunk_index, i);
      const std::size_t width = text::code_point_offsets(c.text).size() - 1;
      ASSERT_LE(width, size);
      if (i + 1 < chunks.size()) {
        ASSERT_EQ(width, size);
        // Consecutive windows overlap by exactly `overlap` code points.
        const auto& next = chunks[i + 1];
        const std::string shared = text.substr(next.char_start, c.char_end - next.char_start);
        ASSERT_EQ(text::code_point_offsets(shared).size() - 1, overlap);
      }
    }
    if (!text.empty()) ASSERT_EQ(chunks.back().char_end, text.size());
    (void)offsets;
  }
}

TEST(Cosine, Examples) {
  const llm::EmbeddingVector a{{1, 0}};
  const llm::EmbeddingVector b{{1, 1}};
  const llm::EmbeddingVector c{{0, 1}};
  EXPECT_DOUBLE_EQ(cosine(b, b), 1.0);
  EXPECT_DOUBLE_EQ(cosine(a, c), 0.0);
  EXPECT_NEAR(cosine(a, b), 0.70711, 1e-5);
  EXPECT_NEAR(cosine(a, b), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_THROW(cosine(a, llm::EmbeddingVector{{0, 0}}), PreconditionError);
  EXPECT_THROW(cosine(a, llm::EmbeddingVector{{1, 0, 0}}), PreconditionError);
}

TEST(Cosine, ScaleInvariance) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> n;
  for (int i = 0; i < 200; ++i) {
    llm::EmbeddingVector u{{n(rng), n(rng), n(rng)}};
    llm::EmbeddingVector v{{n(rng), n(rng), n(rng)}};
    const double a = 0.01 + std::abs(n(rng)) * 10;
    llm::EmbeddingVector scaled = u;
    for (double& x : scaled.values) x *= a;
    EXPECT_NEAR(cosine(scaled, v), cosine(u, v), 1e-12);
  }
}

TEST(Index, BuildKeepsDuplicatesAndChecksDims) {
  const auto index = build_index({chunk_with(0, {1, 0}, "same"), chunk_with(1, {1, 0}, "same"), chunk_with(2, {0, 1})});
  EXPECT_EQ(index.size(), 3u);
  EXPECT_EQ(index.search(llm::EmbeddingVector{{1, 0}}, 0.5, 5).size(), 2u);
  EXPECT_THROW(build_index({chunk_with(0, {1, 0}), chunk_with(1, {1, 0, 0})}), PreconditionError);
  EXPECT_TRUE(build_index({}).empty());
}

TEST(Retrieve, FourChunkHandExample) {
  EmbeddingFixtures fx({{"dual variable", {1, 0}}});
  const auto index = build_index(
      {chunk_with(0, {0, 1}), chunk_with(1, {1, 1}), chunk_with(2, {1, 0}), chunk_with(3, {-1, 0})});
  const auto hits = retrieve("dual variable", index, 0.3, 2, *fx.gateway, {});
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].chunk->chunk_index, 2u);
  EXPECT_DOUBLE_EQ(hits[0].score, 1.0);
  EXPECT_EQ(hits[1].chunk->chunk_index, 1u);
  EXPECT_NEAR(hits[1].score, 0.70711, 1e-5);
}

TEST(Retrieve, AllBelowThresholdAndEmptyIndex) {
  EmbeddingFixtures fx({{"term", {1, 0}}});
  const auto index = build_index({chunk_with(0, {0, 1}), chunk_with(1, {-1, 1})});
  EXPECT_TRUE(retrieve("term", index, 0.3, 5, *fx.gateway, {}).empty());
  EXPECT_TRUE(retrieve("term", ChunkIndex(), 0.3, 5, *fx.gateway, {}).empty());
  EXPECT_EQ(retrieve("term", index, -1.0, 5, *fx.gateway, {}).size(), 2u);
  EXPECT_THROW(retrieve("term", index, 1.5, 5, *fx.gateway, {}), PreconditionError);
  EXPECT_THROW(retrieve("term", index, 0.3, 0, *fx.gateway, {}), PreconditionError);
}

TEST(Retrieve, QueryEqualToChunkComesFirstWithScoreOne) {
  const auto index = build_index({chunk_with(0, {0.2, 0.9, 0.1}), chunk_with(1, {0.5, 0.5, 0.5})});
  const auto hits = index.search(llm::EmbeddingVector{{0.5, 0.5, 0.5}}, -1, 5);
  EXPECT_EQ(hits[0].chunk->chunk_index, 1u);
  EXPECT_NEAR(hits[0].score, 1.0, 1e-12);
}

TEST(Retrieve, MatchesBruteForceScanOnGrid) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> vectors;
    std::vector<Chunk> chunks;
    for (std::size_t i = 0; i < 15; ++i) {
      std::vector<double> v(4);
      for (double& x : v) x = static_cast<double>(static_cast<int>(rng() % 7) - 3);
      if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0; })) v[0] = 1;
      if (i % 5 == 4) v = vectors[i - 1];  // exact score ties
      vectors.push_back(v);
      chunks.push_back(chunk_with(i, v));
    }
    const auto index = build_index(chunks);
    std::vector<double> q(4);
    for (double& x : q) x = static_cast<double>(static_cast<int>(rng() % 7) - 3);
    if (std::all_of(q.begin(), q.end(), [](double x) { return x == 0; })) q[1] = 1;
    for (double t : {-1.0, -0.5, 0.0, 0.2, 0.3, 0.5, 0.8, 1.0}) {
      for (std::size_t k : {1u, 2u, 3u, 5u, 15u, 100u}) {
        const auto got = index.search(llm::EmbeddingVector{q}, t, k);
        const auto expected = oracle::retrieve(vectors, q, t, k);
        ASSERT_EQ(got.size(), expected.size()) << t << " " << k;
        for (std::size_t i = 0; i < got.size(); ++i) {
          ASSERT_EQ(got[i].chunk->chunk_index, expected[i].first);
          ASSERT_EQ(got[i].score, expected[i].second);
        }
      }
    }
  }
}

TEST(Retrieve, AnyQueryIsFilteredPrefixOfFullOrdering) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n;
  std::vector<Chunk> chunks;
  for (std::size_t i = 0; i < 30; ++i) chunks.push_back(chunk_with(i, {n(rng), n(rng), n(rng)}));
  const auto index = build_index(chunks);
  const llm::EmbeddingVector q{{n(rng), n(rng), n(rng)}};
  const auto all = index.search(q, -1.0, 1000);
  ASSERT_EQ(all.size(), 30u);
  for (double t : {-0.3, 0.0, 0.3, 0.6}) {
    for (std::size_t k : {1u, 4u, 10u}) {
      const auto got = index.search(q, t, k);
      std::size_t expected = 0;
      while (expected < all.size() && expected < k && all[expected].score >= t) ++expected;
      ASSERT_EQ(got.size(), expected);
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].chunk, all[i].chunk);
    }
  }
}

TEST(Index, EmbedPersistLoadRoundTrip) {
  stub::Server server;
  TempDir dir;
  llm::GatewayConfig gc;
  gc.mode = llm::Mode::live;
  gc.base_url = server.base_url();
  gc.fixtures_dir = dir / "unused";
  llm::Gateway gw(gc, std::make_shared<http::LiveTransport>());
  const std::string text =
      "Monte Carlo tree search grows a search tree. The dual variable prices constraint violations. "
      "Projected subgradient steps keep the multiplier non-negative.";
  const ChunkingConfig chunking{100, 50};
  const auto index = embed_and_index(chunk_fulltext(text, chunking, "2403.01001"), gw, {});
  ASSERT_GT(index.size(), 1u);
  save_index(dir / "index", "2403.01001", chunking, index);
  const auto loaded = load_index(dir / "index", "2403.01001");
  EXPECT_EQ(loaded.chunks(), index.chunks());
  EXPECT_THROW(load_index(dir / "index", "other"), NotFoundError);

  const auto hits = retrieve("dual variable", loaded, 0.1, 2, gw, {});
  ASSERT_FALSE(hits.empty());
  EXPECT_NE(hits[0].chunk->text.find("dual variable"), std::string::npos);
  const json trace = retrieval_trace("2403.01001", "dual variable", 0.1, 2, hits);
  EXPECT_EQ(trace.at("results").at(0).at("chunk"), hits[0].chunk->id());
  EXPECT_EQ(hits[0].chunk->id(), fmt::format("2403.01001#{}", hits[0].chunk->chunk_index));
}

}  // namespace
}  // namespace dejargon::retrieval
