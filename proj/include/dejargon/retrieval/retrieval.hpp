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

// Fulltext chunking and exact cosine-similarity retrieval over one article.

#ifndef DEJARGON_RETRIEVAL_RETRIEVAL_HPP
#define DEJARGON_RETRIEVAL_RETRIEVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/hash.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/core/text.hpp"
#include "dejargon/llm/gateway.hpp"

namespace dejargon::retrieval {

using llm::EmbeddingVector;

struct Chunk {
  std::string arxiv_id;
  std::size_t chunk_index = 0;
  std::size_t char_start = 0;  // byte offsets into the fulltext
  std::size_t char_end = 0;
  std::string text;
  EmbeddingVector vector;

  /// Stable identifier used in prompts' provenance and audit traces.
  std::string id() const { return fmt::format("{}#{}", arxiv_id, chunk_index); }

  bool operator==(const Chunk&) const = default;
};

struct ChunkingConfig {
  std::size_t size = 2048;   // code points
  std::size_t overlap = 256; // code points

  void validate() const {
    require(size > 0, "chunking: size must be positive");
    require(overlap < size, "chunking: overlap must be smaller than size");
  }
};

/// Sliding windows of `size` code points advancing by size - overlap. The
/// last window ends exactly at the end of the text and may be shorter.
inline std::vector<Chunk> chunk_fulltext(std::string_view text, const ChunkingConfig& config,
                                         const std::string& arxiv_id = {}) {
  config.validate();
  std::vector<Chunk> chunks;
  if (text.empty()) return chunks;
  const std::vector<std::size_t> cps = text::code_point_offsets(text);
  const std::size_t length = cps.size() - 1;
  const std::size_t stride = config.size - config.overlap;
  for (std::size_t begin = 0;; begin += stride) {
    const std::size_t end = std::min(begin + config.size, length);
    Chunk c;
    c.arxiv_id = arxiv_id;
    c.chunk_index = chunks.size();
    c.char_start = cps[begin];
    c.char_end = cps[end];
    c.text = std::string(text.substr(c.char_start, c.char_end - c.char_start));
    chunks.push_back(std::move(c));
    if (end == length) break;
  }
  return chunks;
}

inline double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  require(u.dim() == v.dim(), fmt::format("cosine: dimension mismatch ({} vs {})", u.dim(), v.dim()));
  require(u.dim() > 0, "cosine: empty vectors");
  double dot = 0.0;
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    dot += u.values[i] * v.values[i];
    nu += u.values[i] * u.values[i];
    nv += v.values[i] * v.values[i];
  }
  require(nu > 0.0 && nv > 0.0, "cosine: zero vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

struct RetrievalResult {
  const Chunk* chunk = nullptr;
  double score = 0.0;
};

/// Immutable set of embedded chunks for one article. Safe to share between
/// threads once built.
class ChunkIndex {
 public:
  ChunkIndex() = default;

  explicit ChunkIndex(std::vector<Chunk> chunks) : chunks_(std::move(chunks)) {
    for (const auto& c : chunks_) {
      c.vector.validate();
      if (c.vector.dim() != chunks_.front().vector.dim()) {
        throw PreconditionError(fmt::format("index: chunk {} has dimension {}, expected {}", c.id(), c.vector.dim(),
                                            chunks_.front().vector.dim()));
      }
    }
  }

  std::size_t size() const { return chunks_.size(); }
  bool empty() const { return chunks_.empty(); }
  const std::vector<Chunk>& chunks() const { return chunks_; }
  std::size_t dim() const { return chunks_.empty() ? 0 : chunks_.front().vector.dim(); }

  /// Chunks scoring >= threshold against `query`, best first, ties by
  /// ascending chunk_index, at most k.
  std::vector<RetrievalResult> search(const EmbeddingVector& query, double threshold, std::size_t k) const {
    require(threshold >= -1.0 && threshold <= 1.0, "retrieve: threshold must be in [-1, 1]");
    require(k >= 1, "retrieve: k must be positive");
    std::vector<RetrievalResult> scored;
    for (const auto& c : chunks_) {
      const double s = cosine(query, c.vector);
      if (s >= threshold) scored.push_back({&c, s});
    }
    std::sort(scored.begin(), scored.end(), [](const RetrievalResult& a, const RetrievalResult& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.chunk->chunk_index < b.chunk->chunk_index;
    });
    if (scored.size() > k) scored.resize(k);
    return scored;
  }

 private:
  std::vector<Chunk> chunks_;
};

inline ChunkIndex build_index(std::vector<Chunk> chunks) { return ChunkIndex(std::move(chunks)); }

/// Embeds chunk texts through the gateway and builds the index.
inline ChunkIndex embed_and_index(std::vector<Chunk> chunks, llm::Gateway& gateway, const llm::ModelConfig& config) {
  if (chunks.empty()) return ChunkIndex();
  std::vector<std::string> texts;
  texts.reserve(chunks.size());
  for (const auto& c : chunks) texts.push_back(c.text);
  const auto vectors = gateway.embed(texts, config);
  for (std::size_t i = 0; i < chunks.size(); ++i) chunks[i].vector = vectors[i];
  return ChunkIndex(std::move(chunks));
}

struct RetrievalConfig {
  double threshold = 0.3;
  std::size_t k = 5;
};

inline std::vector<RetrievalResult> retrieve(const std::string& term, const ChunkIndex& index, double threshold,
                                             std::size_t k, llm::Gateway& gateway, const llm::ModelConfig& config) {
  require(threshold >= -1.0 && threshold <= 1.0, "retrieve: threshold must be in [-1, 1]");
  require(k >= 1, "retrieve: k must be positive");
  if (index.empty()) return {};
  const auto query = gateway.embed({term}, config).front();
  return index.search(query, threshold, k);
}

inline void to_json(json& j, const Chunk& c) {
  j = json{{"arxiv_id", c.arxiv_id},     {"chunk_index", c.chunk_index}, {"char_start", c.char_start},
           {"char_end", c.char_end},     {"text", c.text},               {"vector", c.vector.values}};
}

inline void from_json(const json& j, Chunk& c) {
  c.arxiv_id = j.at("arxiv_id").get<std::string>();
  c.chunk_index = j.at("chunk_index").get<std::size_t>();
  c.char_start = j.at("char_start").get<std::size_t>();
  c.char_end = j.at("char_end").get<std::size_t>();
  c.text = j.at("text").get<std::string>();
  c.vector.values = j.at("vector").get<std::vector<double>>();
}

/// <dir>/<sha256(arxiv_id)>.json holds {"arxiv_id", "chunking", "chunks"}.
inline fs::path index_path(const fs::path& dir, const std::string& arxiv_id) {
  return dir / (sha256_hex(arxiv_id) + ".json");
}

inline void save_index(const fs::path& dir, const std::string& arxiv_id, const ChunkingConfig& chunking,
                       const ChunkIndex& index) {
  write_json_file(index_path(dir, arxiv_id),
                  json{{"arxiv_id", arxiv_id},
                       {"chunking", json{{"size", chunking.size}, {"overlap", chunking.overlap}}},
                       {"chunks", index.chunks()}});
}

inline ChunkIndex load_index(const fs::path& dir, const std::string& arxiv_id) {
  const fs::path path = index_path(dir, arxiv_id);
  if (!fs::exists(path)) throw NotFoundError(fmt::format("no chunk index for {} (run `index`)", arxiv_id));
  return ChunkIndex(read_json_file(path).at("chunks").get<std::vector<Chunk>>());
}

/// Audit row for one retrieval: the term, and every returned chunk id with
/// its score.
inline json retrieval_trace(const std::string& arxiv_id, const std::string& term, double threshold, std::size_t k,
                            const std::vector<RetrievalResult>& results) {
  json hits = json::array();
  for (const auto& r : results) hits.push_back(json{{"chunk", r.chunk->id()}, {"score", r.score}});
  return json{{"arxiv_id", arxiv_id}, {"term", term}, {"threshold", threshold}, {"k", k}, {"results", hits}};
}

}  // namespace dejargon::retrieval

#endif  // DEJARGON_RETRIEVAL_RETRIEVAL_HPP
