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

// On-disk article store.
//
//   <root>/articles/<h[0:2]>/<h>.json   one ArticleRecord, h = sha256(arxiv_id)
//   <root>/manifest.json                {"version": 1, "splits": {id: "test"|"dev"}}
//
// Hashing the id keeps old-style ids ("cs/0112017") filesystem-safe and
// spreads records over subdirectories.

#ifndef DEJARGON_CORPUS_STORE_HPP
#define DEJARGON_CORPUS_STORE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/hash.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/corpus/article.hpp"
#include "dejargon/corpus/selection.hpp"

namespace dejargon::corpus {

enum class Split { test, dev };

inline std::string to_string(Split s) { return s == Split::test ? "test" : "dev"; }

inline Split split_from_string(const std::string& s) {
  if (s == "test") return Split::test;
  if (s == "dev") return Split::dev;
  throw ParseError(fmt::format("unknown split '{}'", s));
}

class CorpusStore {
 public:
  CorpusStore() = default;

  const std::map<std::string, ArticleRecord>& records() const { return records_; }
  const std::map<std::string, Split>& split_labels() const { return splits_; }

  bool contains(const std::string& id) const { return records_.count(id) != 0; }

  const ArticleRecord& get(const std::string& id) const {
    const auto it = records_.find(id);
    if (it == records_.end()) throw NotFoundError(fmt::format("no article '{}'", id));
    return it->second;
  }

  /// Inserts or replaces by arxiv_id.
  void put(ArticleRecord record) {
    record.validate();
    const std::string id = record.arxiv_id;
    records_.insert_or_assign(id, std::move(record));
  }

  void label(const std::string& id, Split split) {
    if (!contains(id)) throw NotFoundError(fmt::format("cannot label unknown article '{}'", id));
    splits_[id] = split;
  }

  /// Replaces all split labels with the given partition.
  void apply_split(const SampleSplit& split) {
    std::map<std::string, Split> labels;
    for (const auto& r : split.test) labels[r.arxiv_id] = Split::test;
    for (const auto& r : split.dev) {
      if (labels.count(r.arxiv_id)) {
        throw PreconditionError(fmt::format("{} is in both test and dev", r.arxiv_id));
      }
      labels[r.arxiv_id] = Split::dev;
    }
    for (const auto& [id, s] : labels) {
      if (!contains(id)) throw NotFoundError(fmt::format("split refers to unknown article '{}'", id));
    }
    splits_ = std::move(labels);
  }

  /// Records labeled `split`, ordered by id.
  std::vector<ArticleRecord> in_split(Split split) const {
    std::vector<ArticleRecord> out;
    for (const auto& [id, s] : splits_) {
      if (s == split) out.push_back(records_.at(id));
    }
    return out;
  }

  std::vector<ArticleRecord> all() const {
    std::vector<ArticleRecord> out;
    for (const auto& [id, r] : records_) out.push_back(r);
    return out;
  }

  static fs::path record_path(const fs::path& root, const std::string& id) {
    const std::string h = sha256_hex(id);
    return root / "articles" / h.substr(0, 2) / (h + ".json");
  }

  void save(const fs::path& root) const {
    for (const auto& [id, record] : records_) write_json_file(record_path(root, id), json(record));
    json splits = json::object();
    for (const auto& [id, s] : splits_) splits[id] = to_string(s);
    write_json_file(root / "manifest.json", json{{"version", 1}, {"splits", splits}});
  }

  /// Loads every record under <root>/articles and the manifest, if present.
  static CorpusStore load(const fs::path& root) {
    CorpusStore store;
    const fs::path articles = root / "articles";
    if (fs::exists(articles)) {
      for (const auto& entry : fs::recursive_directory_iterator(articles)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
        ArticleRecord record;
        try {
          record = read_json_file(entry.path()).get<ArticleRecord>();
        } catch (const json::exception& e) {
          throw ParseError(fmt::format("{}: {}", entry.path().string(), e.what()));
        }
        if (store.contains(record.arxiv_id)) {
          throw ParseError(fmt::format("duplicate article '{}' in store", record.arxiv_id));
        }
        store.put(std::move(record));
      }
    }
    const fs::path manifest = root / "manifest.json";
    if (fs::exists(manifest)) {
      const json splits = read_json_file(manifest).value("splits", json::object());
      for (const auto& [id, s] : splits.items()) {
        store.label(id, split_from_string(s.get<std::string>()));
      }
    }
    return store;
  }

 private:
  std::map<std::string, ArticleRecord> records_;
  std::map<std::string, Split> splits_;
};

}  // namespace dejargon::corpus

#endif  // DEJARGON_CORPUS_STORE_HPP
