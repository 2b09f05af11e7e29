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

#ifndef DEJARGON_LLM_CONFIG_HPP
#define DEJARGON_LLM_CONFIG_HPP

#include <cmath>
#include <string>

#include "dejargon/core/error.hpp"
#include "dejargon/core/json_io.hpp"

namespace dejargon::llm {

/// Generation parameters. The model names are opaque strings passed through
/// to the provider.
struct ModelConfig {
  std::string chat_model = "gpt-4-turbo";
  std::string embed_model = "text-embedding-3-small";
  int max_tokens = 512;
  double temperature = 1.0;

  bool operator==(const ModelConfig&) const = default;

  void validate() const {
    require(!chat_model.empty(), "model config: empty chat_model");
    require(!embed_model.empty(), "model config: empty embed_model");
    require(max_tokens >= 1, "model config: max_tokens must be >= 1");
    require(std::isfinite(temperature) && temperature >= 0.0, "model config: temperature must be >= 0");
  }

  /// Same config with sampling made greedy.
  ModelConfig deterministic() const {
    ModelConfig c = *this;
    c.temperature = 0.0;
    return c;
  }
};

inline void to_json(json& j, const ModelConfig& c) {
  j = json{{"chat_model", c.chat_model},
           {"embed_model", c.embed_model},
           {"max_tokens", c.max_tokens},
           {"temperature", c.temperature}};
}

inline void from_json(const json& j, ModelConfig& c) {
  const ModelConfig defaults;
  c.chat_model = j.value("chat_model", defaults.chat_model);
  c.embed_model = j.value("embed_model", defaults.embed_model);
  c.max_tokens = j.value("max_tokens", defaults.max_tokens);
  c.temperature = j.value("temperature", defaults.temperature);
}

}  // namespace dejargon::llm

#endif  // DEJARGON_LLM_CONFIG_HPP
