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

// Blinded, order-randomized definition pairs for human judgment.
//
// The annotator-facing pair file carries only neutral slots ("slot_a",
// "slot_b"). Which method sits in which slot lives in a separate key file,
// together with the seed that decided it, so nothing in the pair file lets
// an annotator recover the order.

#ifndef DEJARGON_DEFINITIONS_BLINDING_HPP
#define DEJARGON_DEFINITIONS_BLINDING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/hash.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/definitions/definitions.hpp"

namespace dejargon::definitions {

enum class Slot { a, b };

inline std::string to_string(Slot s) { return s == Slot::a ? "slot_a" : "slot_b"; }

inline Slot slot_from_string(const std::string& s) {
  if (s == "slot_a") return Slot::a;
  if (s == "slot_b") return Slot::b;
  throw ParseError(fmt::format("unknown slot '{}'", s));
}

/// Which method occupies each slot.
struct SlotKey {
  DefinitionMode slot_a = DefinitionMode::abstract_only;
  DefinitionMode slot_b = DefinitionMode::rag;
  std::uint64_t seed = 0;

  DefinitionMode method_of(Slot s) const { return s == Slot::a ? slot_a : slot_b; }
  Slot slot_of(DefinitionMode m) const { return slot_a == m ? Slot::a : Slot::b; }

  bool operator==(const SlotKey&) const = default;
};

/// One unit of human judgment. A missing slot means the rag method produced
/// no definition; such items are judged for accuracy only.
struct DefinitionPair {
  std::string pair_id;
  std::string reader_id;
  std::string arxiv_id;
  std::string term;
  std::string abstract;
  std::optional<std::string> slot_a;
  std::optional<std::string> slot_b;
  SlotKey unblind_key;

  bool complete() const { return slot_a.has_value() && slot_b.has_value(); }

  const std::optional<std::string>& slot(Slot s) const { return s == Slot::a ? slot_a : slot_b; }

  bool operator==(const DefinitionPair&) const = default;
};

/// Deterministic, content-derived pair id.
inline std::string make_pair_id(const std::string& reader_id, const std::string& arxiv_id, const std::string& term) {
  return "p" + sha256_hex(reader_id + "\n" + arxiv_id + "\n" + jargon::normalize_term(term)).substr(0, 12);
}

/// True when the abstract-only definition goes in slot_a. A pure function of
/// (pair_id, seed) so re-exports reproduce the same layout.
inline bool abstract_first(const std::string& pair_id, std::uint64_t seed) {
  return (splitmix64(fnv1a64(pair_id) ^ splitmix64(seed)) >> 63) == 0;
}

struct PairContext {
  std::string pair_id;
  std::string reader_id;
  std::string abstract;
};

namespace detail {

inline DefinitionPair place(const Definition& d_abs, const std::optional<std::string>& rag_text, std::uint64_t seed,
                            const PairContext& ctx) {
  require(d_abs.method == DefinitionMode::abstract_only, "pair: first definition must be abstract_only");
  require(d_abs.status == Status::ok, "pair: abstract-only definition has no text");
  require(!ctx.pair_id.empty(), "pair: empty pair_id");
  DefinitionPair p;
  p.pair_id = ctx.pair_id;
  p.reader_id = ctx.reader_id;
  p.arxiv_id = d_abs.arxiv_id;
  p.term = d_abs.term;
  p.abstract = ctx.abstract;
  if (abstract_first(ctx.pair_id, seed)) {
    p.slot_a = d_abs.text;
    p.slot_b = rag_text;
    p.unblind_key = {DefinitionMode::abstract_only, DefinitionMode::rag, seed};
  } else {
    p.slot_a = rag_text;
    p.slot_b = d_abs.text;
    p.unblind_key = {DefinitionMode::rag, DefinitionMode::abstract_only, seed};
  }
  return p;
}

inline void check_same_target(const Definition& d_abs, const Definition& d_rag) {
  require(d_rag.method == DefinitionMode::rag, "pair: second definition must be rag");
  if (d_abs.arxiv_id != d_rag.arxiv_id ||
      jargon::normalize_term(d_abs.term) != jargon::normalize_term(d_rag.term)) {
    throw PreconditionError(fmt::format("pair: definitions are for different targets ({}, '{}') vs ({}, '{}')",
                                        d_abs.arxiv_id, d_abs.term, d_rag.arxiv_id, d_rag.term));
  }
}

}  // namespace detail

inline DefinitionPair make_blind_pair(const Definition& d_abs, const Definition& d_rag, std::uint64_t seed,
                                      const PairContext& ctx) {
  detail::check_same_target(d_abs, d_rag);
  require(d_rag.status == Status::ok, "pair: rag definition has no context; use make_accuracy_only_item");
  return detail::place(d_abs, d_rag.text, seed, ctx);
}

/// Item for a term whose rag definition came back no_context: the rag slot
/// stays empty and the item only collects an accuracy verdict.
inline DefinitionPair make_accuracy_only_item(const Definition& d_abs, const Definition& d_rag, std::uint64_t seed,
                                              const PairContext& ctx) {
  detail::check_same_target(d_abs, d_rag);
  require(d_rag.status == Status::no_context, "accuracy-only item needs a no_context rag definition");
  return detail::place(d_abs, std::nullopt, seed, ctx);
}

/// Method -> definition text (nullopt for an empty slot).
inline std::map<DefinitionMode, std::optional<std::string>> unblind(const DefinitionPair& pair, const SlotKey& key) {
  require(key.slot_a != key.slot_b, "unblind: key must map the slots to distinct methods");
  return {{key.slot_a, pair.slot_a}, {key.slot_b, pair.slot_b}};
}

/// Annotator-facing form; never includes the key.
inline json blinded_json(const DefinitionPair& p) {
  return json{{"pair_id", p.pair_id},
              {"reader_id", p.reader_id},
              {"arxiv_id", p.arxiv_id},
              {"term", p.term},
              {"abstract", p.abstract},
              {"slot_a", p.slot_a ? json(*p.slot_a) : json(nullptr)},
              {"slot_b", p.slot_b ? json(*p.slot_b) : json(nullptr)}};
}

inline DefinitionPair pair_from_blinded_json(const json& j) {
  DefinitionPair p;
  p.pair_id = j.at("pair_id").get<std::string>();
  p.reader_id = j.at("reader_id").get<std::string>();
  p.arxiv_id = j.at("arxiv_id").get<std::string>();
  p.term = j.at("term").get<std::string>();
  p.abstract = j.value("abstract", "");
  p.slot_a = optional_field<std::string>(j, "slot_a");
  p.slot_b = optional_field<std::string>(j, "slot_b");
  if (p.pair_id.empty() || p.term.empty()) throw ParseError("pair without id or term", j.dump());
  if (!p.slot_a && !p.slot_b) throw ParseError(fmt::format("pair {} has no definitions", p.pair_id), j.dump());
  return p;
}

/// pair_id -> SlotKey, persisted apart from the pairs.
class KeyStore {
 public:
  void add(const std::string& pair_id, const SlotKey& key) {
    if (!keys_.emplace(pair_id, key).second) throw ConflictError(fmt::format("duplicate key for pair {}", pair_id));
  }

  bool contains(const std::string& pair_id) const { return keys_.count(pair_id) != 0; }

  const SlotKey& at(const std::string& pair_id) const {
    const auto it = keys_.find(pair_id);
    if (it == keys_.end()) throw NotFoundError(fmt::format("no unblinding key for pair '{}'", pair_id));
    return it->second;
  }

  std::size_t size() const { return keys_.size(); }

  void merge(const KeyStore& other) {
    for (const auto& [id, key] : other.keys_) add(id, key);
  }

  json to_json() const {
    json pairs = json::object();
    for (const auto& [id, k] : keys_) {
      pairs[id] = json{{"slot_a", profiles::to_string(k.slot_a)},
                       {"slot_b", profiles::to_string(k.slot_b)},
                       {"seed", k.seed}};
    }
    return json{{"version", 1}, {"pairs", pairs}};
  }

  static KeyStore from_json(const json& j) {
    KeyStore store;
    for (const auto& [id, k] : j.at("pairs").items()) {
      SlotKey key{profiles::definition_mode_from_string(k.at("slot_a").get<std::string>()),
                  profiles::definition_mode_from_string(k.at("slot_b").get<std::string>()),
                  k.value("seed", std::uint64_t{0})};
      if (key.slot_a == key.slot_b) throw ParseError(fmt::format("key for {} maps both slots to one method", id));
      store.add(id, key);
    }
    return store;
  }

  void save(const fs::path& path) const { write_json_file(path, to_json()); }

  static KeyStore load(const fs::path& path) {
    try {
      return from_json(read_json_file(path));
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("{}: bad key file: {}", path.string(), e.what()));
    }
  }

 private:
  std::map<std::string, SlotKey> keys_;
};

inline std::vector<DefinitionPair> load_pairs(const fs::path& path) {
  std::vector<DefinitionPair> out;
  for (const auto& row : read_jsonl(path)) {
    try {
      out.push_back(pair_from_blinded_json(row));
    } catch (const json::exception& e) {
      throw ParseError(fmt::format("{}: bad pair: {}", path.string(), e.what()), row.dump());
    }
  }
  return out;
}

/// Writes the blinded pairs and, separately, their key file.
inline void save_pairs(const fs::path& pairs_path, const fs::path& key_path, const std::vector<DefinitionPair>& pairs) {
  std::vector<json> rows;
  KeyStore keys;
  for (const auto& p : pairs) {
    rows.push_back(blinded_json(p));
    keys.add(p.pair_id, p.unblind_key);
  }
  write_jsonl(pairs_path, rows);
  keys.save(key_path);
}

}  // namespace dejargon::definitions

#endif  // DEJARGON_DEFINITIONS_BLINDING_HPP
