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

#include <future>

#include "dejargon/llm/gateway.hpp"
#include "support/stub_llm.hpp"
#include "support/temp_dir.hpp"

namespace dejargon::llm {
namespace {

using testing_support::TempDir;

profiles::PromptBundle identify_bundle() {
  return {"System text.",
          "About the reader:\nA journalist.\n\nAbstract:\nWe study constrained Markov decision processes with "
          "Lagrangian-guided Monte Carlo tree search.\n\nList the terms. Reply NO_JARGON if none.",
          ModelConfig{}};
}

GatewayConfig config_for(Mode mode, const fs::path& fixtures, const std::string& base_url = "http://127.0.0.1:9") {
  GatewayConfig c;
  c.mode = mode;
  c.fixtures_dir = fixtures;
  c.base_url = base_url;
  c.base_backoff = std::chrono::milliseconds(1);
  c.max_backoff = std::chrono::milliseconds(5);
  return c;
}

TEST(Gateway, RequestKeyIsSha256OfCanonicalJson) {
  const json request = chat_request({"s", "q", {}}, ModelConfig{});
  const std::string canonical =
      R"({"kind":"chat","request":{"max_tokens":512,"messages":[{"content":"s","role":"system"},)"
      R"({"content":"q","role":"user"}],"model":"gpt-4-turbo","temperature":1.0}})";
  EXPECT_EQ(request_key("chat", request), sha256_hex(canonical));
}

TEST(Gateway, KeyDependsOnConfig) {
  const auto b = identify_bundle();
  EXPECT_NE(request_key("chat", chat_request(b, ModelConfig{})),
            request_key("chat", chat_request(b, ModelConfig{}.deterministic())));
}

TEST(Gateway, RetriesAfter429ThenSucceeds) {
  stub::Server server(/*fail_first=*/2, 429);
  TempDir dir;
  Gateway gw(config_for(Mode::live, dir.path(), server.base_url()), std::make_shared<http::LiveTransport>());
  const std::string reply = gw.complete(identify_bundle());
  EXPECT_EQ(reply, stub::identify_reply(identify_bundle().query_text));
  EXPECT_EQ(server.requests(), 3);
  EXPECT_EQ(gw.network_calls(), 3u);
  EXPECT_TRUE(fs::is_empty(dir.path()));  // live mode never writes fixtures
}

TEST(Gateway, RetryAfterHintOverridesBackoff) {
  stub::Server server(1, 503);
  TempDir dir;
  auto cfg = config_for(Mode::live, dir.path(), server.base_url());
  cfg.base_backoff = std::chrono::milliseconds(20000);
  cfg.max_backoff = std::chrono::milliseconds(20000);
  Gateway gw(cfg, std::make_shared<http::LiveTransport>());
  const auto start = std::chrono::steady_clock::now();
  gw.complete(identify_bundle());
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(5));
}

TEST(Gateway, GivesUpAfterMaxAttempts) {
  stub::Server server(100, 429);
  TempDir dir;
  auto cfg = config_for(Mode::live, dir.path(), server.base_url());
  cfg.max_attempts = 3;
  Gateway gw(cfg, std::make_shared<http::LiveTransport>());
  EXPECT_THROW(gw.complete(identify_bundle()), RetryableError);
  EXPECT_EQ(server.requests(), 3);
}

TEST(Gateway, NonTransientStatusFailsImmediately) {
  stub::Server server(100, 401);
  TempDir dir;
  Gateway gw(config_for(Mode::live, dir.path(), server.base_url()), std::make_shared<http::LiveTransport>());
  try {
    gw.complete(identify_bundle());
    FAIL() << "expected Error";
  } catch (const RetryableError&) {
    FAIL() << "401 must not be retried";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("401"), std::string::npos);
  }
  EXPECT_EQ(server.requests(), 1);
}

TEST(Gateway, UnreachableHostIsRetryable) {
  TempDir dir;
  auto cfg = config_for(Mode::live, dir.path(), "http://127.0.0.1:1");
  cfg.max_attempts = 2;
  Gateway gw(cfg, std::make_shared<http::LiveTransport>(std::chrono::seconds(2)));
  EXPECT_THROW(gw.complete(identify_bundle()), RetryableError);
}

TEST(Gateway, RecordThenReplayOffline) {
  stub::Server server;
  TempDir dir;
  std::string recorded;
  std::vector<EmbeddingVector> vectors;
  {
    Gateway gw(config_for(Mode::record, dir.path(), server.base_url()), std::make_shared<http::LiveTransport>());
    recorded = gw.complete(identify_bundle());
    vectors = gw.embed({"alpha beta", "gamma"}, ModelConfig{});
    // A second identical request is served from the fixture.
    EXPECT_EQ(gw.complete(identify_bundle()), recorded);
    EXPECT_EQ(gw.network_calls(), 2u);
  }
  Gateway replay(config_for(Mode::replay, dir.path()), std::make_shared<NoNetworkTransport>());
  EXPECT_EQ(replay.complete(identify_bundle()), recorded);
  EXPECT_EQ(replay.embed({"gamma", "alpha beta"}, ModelConfig{}), (std::vector<EmbeddingVector>{vectors[1], vectors[0]}));
  EXPECT_EQ(replay.embed({"gamma"}, ModelConfig{}).front(), vectors[1]);
  EXPECT_EQ(replay.network_calls(), 0u);
}

TEST(Gateway, ReplayMissIsExplicit) {
  TempDir dir;
  Gateway gw(config_for(Mode::replay, dir.path()), std::make_shared<NoNetworkTransport>());
  try {
    gw.complete(identify_bundle());
    FAIL() << "expected CacheMissError";
  } catch (const CacheMissError& e) {
    EXPECT_EQ(e.key(), request_key("chat", chat_request(identify_bundle(), ModelConfig{})));
  }
  EXPECT_THROW(gw.embed({"x"}, ModelConfig{}), CacheMissError);
  EXPECT_EQ(gw.network_calls(), 0u);
}

TEST(Gateway, RejectsInvalidConfigAndPrompts) {
  TempDir dir;
  Gateway gw(config_for(Mode::replay, dir.path()), std::make_shared<NoNetworkTransport>());
  ModelConfig bad;
  bad.max_tokens = 0;
  EXPECT_THROW(gw.complete(identify_bundle(), bad), PreconditionError);
  bad = {};
  bad.temperature = -1;
  EXPECT_THROW(gw.complete(identify_bundle(), bad), PreconditionError);
  EXPECT_THROW(gw.complete({"", "q", {}}), PreconditionError);
  EXPECT_THROW(gw.embed({}, ModelConfig{}), PreconditionError);
  EXPECT_THROW(gw.embed({""}, ModelConfig{}), PreconditionError);
}

TEST(Gateway, EmbedDuplicatesAndDims) {
  stub::Server server;
  TempDir dir;
  Gateway gw(config_for(Mode::live, dir.path(), server.base_url()), std::make_shared<http::LiveTransport>());
  const auto twice = gw.embed({"same text", "same text"}, ModelConfig{});
  ASSERT_EQ(twice.size(), 2u);
  EXPECT_EQ(twice[0], twice[1]);
  const auto three = gw.embed({"one", "two", "three"}, ModelConfig{});
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0].dim(), three[1].dim());
  EXPECT_EQ(three[1].dim(), three[2].dim());
  EXPECT_EQ(server.embedding_calls(), 2);
}

TEST(Gateway, MalformedReplyIsParseErrorWithRaw) {
  class Garbage final : public http::Transport {
   public:
    http::Response send(const http::Request&) override { return {.status = 200, .body = R"({"choices":[]})"}; }
  };
  TempDir dir;
  Gateway gw(config_for(Mode::live, dir.path()), std::make_shared<Garbage>());
  try {
    gw.complete(identify_bundle());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.raw(), R"({"choices":[]})");
  }
}

TEST(Gateway, InFlightCapIsRespected) {
  class Slow final : public http::Transport {
   public:
    http::Response send(const http::Request&) override {
      const int now = ++active;
      int seen = peak.load();
      while (now > seen && !peak.compare_exchange_weak(seen, now)) {
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
      --active;
      return {.status = 200, .body = R"({"choices":[{"message":{"content":"ok"}}]})"};
    }
    std::atomic<int> active{0};
    std::atomic<int> peak{0};
  };
  TempDir dir;
  auto cfg = config_for(Mode::live, dir.path());
  cfg.max_in_flight = 2;
  auto transport = std::make_shared<Slow>();
  Gateway gw(cfg, transport);
  std::vector<std::future<std::string>> jobs;
  for (int i = 0; i < 8; ++i) {
    jobs.push_back(std::async(std::launch::async, [&gw, i] {
      return gw.complete({"s", fmt::format("q{}", i), ModelConfig{}});
    }));
  }
  for (auto& j : jobs) EXPECT_EQ(j.get(), "ok");
  EXPECT_LE(transport->peak.load(), 2);
  EXPECT_GE(transport->peak.load(), 1);
}

TEST(Gateway, ModeStrings) {
  EXPECT_EQ(mode_from_string("record"), Mode::record);
  EXPECT_THROW(mode_from_string("offline"), PreconditionError);
}

}  // namespace
}  // namespace dejargon::llm
