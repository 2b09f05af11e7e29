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

// Chat-completion and embedding client with record/replay.
//
// Every request is reduced to a canonical JSON document (object keys sorted,
// nlohmann's shortest round-trip number formatting) and keyed by the SHA-256
// of its serialization. In replay mode only the fixture directory is
// consulted and a missing key is a CacheMissError. Record mode serves hits
// from fixtures and forwards misses, saving what comes back. Live mode never
// touches fixtures.
//
// Fixture file: <fixtures>/<key>.json = {"key", "request", "response"}.
// Embedding fixtures are per input text so a term embedded alone and the
// same text embedded within a batch share one entry.

#ifndef DEJARGON_LLM_GATEWAY_HPP
#define DEJARGON_LLM_GATEWAY_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <string>
#include <thread>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/hash.hpp"
#include "dejargon/core/http.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/llm/config.hpp"
#include "dejargon/profiles/prompts.hpp"

namespace dejargon::llm {

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }

  bool operator==(const EmbeddingVector&) const = default;

  void validate() const {
    require(!values.empty(), "embedding: zero dimension");
    for (double v : values) require(std::isfinite(v), "embedding: non-finite component");
  }
};

enum class Mode { live, record, replay };

inline Mode mode_from_string(const std::string& s) {
  if (s == "live") return Mode::live;
  if (s == "record") return Mode::record;
  if (s == "replay") return Mode::replay;
  throw PreconditionError(fmt::format("unknown gateway mode '{}'", s));
}

struct GatewayConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;
  Mode mode = Mode::replay;
  fs::path fixtures_dir = "fixtures/llm";
  int max_attempts = 5;
  std::chrono::milliseconds base_backoff{1000};
  std::chrono::milliseconds max_backoff{60000};
  int max_in_flight = 4;
};

/// Fixture directory with concurrent reads and serialized writes.
class ReplayCache {
 public:
  explicit ReplayCache(fs::path dir) : dir_(std::move(dir)) {}

  std::optional<json> lookup(const std::string& key) const {
    {
      std::shared_lock lock(mutex_);
      if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    const fs::path path = dir_ / (key + ".json");
    if (!fs::exists(path)) return std::nullopt;
    json response = read_json_file(path).at("response");
    std::unique_lock lock(mutex_);
    memo_.emplace(key, response);
    return response;
  }

  void store(const std::string& key, const json& request, const json& response) {
    std::unique_lock lock(mutex_);
    write_json_file(dir_ / (key + ".json"), json{{"key", key}, {"request", request}, {"response", response}});
    memo_.insert_or_assign(key, response);
  }

 private:
  fs::path dir_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::string, json> memo_;
};

inline json chat_request(const profiles::PromptBundle& bundle, const ModelConfig& config) {
  return json{{"model", config.chat_model},
              {"messages", json::array({json{{"role", "system"}, {"content", bundle.system_text}},
                                        json{{"role", "user"}, {"content", bundle.query_text}}})},
              {"max_tokens", config.max_tokens},
              {"temperature", config.temperature}};
}

inline std::string request_key(const std::string& kind, const json& request) {
  return sha256_hex(json{{"kind", kind}, {"request", request}}.dump());
}

class Gateway {
 public:
  Gateway(GatewayConfig config, std::shared_ptr<http::Transport> transport)
      : config_(std::move(config)),
        transport_(std::move(transport)),
        cache_(config_.fixtures_dir),
        in_flight_(std::clamp(config_.max_in_flight, 1, 1024)) {}

  const GatewayConfig& config() const { return config_; }

  std::string complete(const profiles::PromptBundle& bundle, const ModelConfig& config) {
    config.validate();
    require(!text::trim(bundle.system_text).empty() && !text::trim(bundle.query_text).empty(),
            "complete: empty prompt");
    const json request = chat_request(bundle, config);
    const std::string key = request_key("chat", request);
    json response;
    if (auto hit = cached(key)) {
      response = std::move(*hit);
    } else {
      response = post("/chat/completions", request);
      if (config_.mode == Mode::record) cache_.store(key, request, response);
    }
    try {
      return response.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("chat response without message content: {}", e.what()), response.dump());
    }
  }

  std::string complete(const profiles::PromptBundle& bundle) { return complete(bundle, bundle.model_config); }

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts, const ModelConfig& config) {
    config.validate();
    require(!texts.empty(), "embed: no texts");
    for (const auto& t : texts) require(!t.empty(), "embed: empty text");

    std::map<std::string, EmbeddingVector> resolved;
    std::vector<std::string> misses;
    for (const auto& t : texts) {
      if (resolved.count(t) || std::find(misses.begin(), misses.end(), t) != misses.end()) continue;
      if (auto hit = cached(request_key("embedding", embedding_request(config, t)))) {
        resolved.emplace(t, parse_vector(*hit));
      } else {
        misses.push_back(t);
      }
    }
    if (!misses.empty()) {
      const json response = post("/embeddings", json{{"model", config.embed_model}, {"input", misses}});
      std::vector<json> data;
      try {
        data = response.at("data").get<std::vector<json>>();
        std::sort(data.begin(), data.end(),
                  [](const json& a, const json& b) { return a.value("index", 0) < b.value("index", 0); });
      } catch (const json::exception& e) {
        throw ParseError(fmt::format("embedding response malformed: {}", e.what()), response.dump());
      }
      if (data.size() != misses.size()) {
        throw ParseError(fmt::format("embedding response has {} vectors for {} inputs", data.size(),
                                     misses.size()),
                         response.dump());
      }
      for (std::size_t i = 0; i < misses.size(); ++i) {
        const json single = json{{"embedding", data[i].at("embedding")}};
        if (config_.mode == Mode::record) {
          const json request = embedding_request(config, misses[i]);
          cache_.store(request_key("embedding", request), request, single);
        }
        resolved.emplace(misses[i], parse_vector(single));
      }
    }

    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(resolved.at(t));
    for (const auto& v : out) {
      if (v.dim() != out.front().dim()) throw ParseError("embedding dimensions differ within one call");
    }
    return out;
  }

  /// Requests that actually went to the transport.
  std::size_t network_calls() const { return network_calls_.load(); }

 private:
  static json embedding_request(const ModelConfig& config, const std::string& text) {
    return json{{"model", config.embed_model}, {"input", text}};
  }

  static EmbeddingVector parse_vector(const json& single) {
    EmbeddingVector v;
    try {
      v.values = single.at("embedding").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("embedding fixture malformed: {}", e.what()), single.dump());
    }
    v.validate();
    return v;
  }

  std::optional<json> cached(const std::string& key) {
    if (config_.mode == Mode::live) return std::nullopt;
    auto hit = cache_.lookup(key);
    if (!hit && config_.mode == Mode::replay) {
      throw CacheMissError(fmt::format("no recorded response for request {} in {}", key,
                                       config_.fixtures_dir.string()),
                           key);
    }
    return hit;
  }

  std::chrono::milliseconds backoff(int attempt, const std::optional<double>& hint) const {
    if (hint) {
      return std::chrono::milliseconds(static_cast<long long>(std::ceil(*hint * 1000.0)));
    }
    const auto scaled = config_.base_backoff * (1LL << std::min(attempt - 1, 20));
    return std::min<std::chrono::milliseconds>(scaled, config_.max_backoff);
  }

  json post(const std::string& path, const json& body) {
    http::Request request;
    request.method = "POST";
    request.url = config_.base_url + path;
    request.body = body.dump();
    if (!config_.api_key.empty()) request.headers.emplace_back("Authorization", "Bearer " + config_.api_key);

    std::string last_error;
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
      std::optional<double> hint;
      try {
        in_flight_.acquire();
        struct Release {
          std::counting_semaphore<1024>& s;
          ~Release() { s.release(); }
        } release{in_flight_};
        ++network_calls_;
        const http::Response r = transport_->send(request);
        if (r.status >= 200 && r.status < 300) {
          try {
            return json::parse(r.body);
          } catch (const json::parse_error& e) {
            throw ParseError(fmt::format("{} returned non-JSON body: {}", path, e.what()), r.body);
          }
        }
        if (!http::is_transient_status(r.status)) {
          throw Error(fmt::format("{} failed with HTTP {}: {}", path, r.status, r.body.substr(0, 500)));
        }
        last_error = fmt::format("HTTP {}", r.status);
        hint = r.retry_after;
      } catch (const RetryableError& e) {
        last_error = e.what();
      }
      if (attempt < config_.max_attempts) std::this_thread::sleep_for(backoff(attempt, hint));
    }
    throw RetryableError(fmt::format("{} failed after {} attempts: {}", path, config_.max_attempts, last_error));
  }

  GatewayConfig config_;
  std::shared_ptr<http::Transport> transport_;
  ReplayCache cache_;
  std::counting_semaphore<1024> in_flight_;
  std::atomic<std::size_t> network_calls_{0};
};

/// Transport that refuses every request; used to prove replay closure.
class NoNetworkTransport final : public http::Transport {
 public:
  http::Response send(const http::Request& request) override {
    throw Error(fmt::format("network access attempted in offline mode: {} {}", request.method, request.url));
  }
};

}  // namespace dejargon::llm

#endif  // DEJARGON_LLM_GATEWAY_HPP
