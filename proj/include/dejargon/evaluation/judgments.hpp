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

// Human judgments of blinded definition pairs, and the tables built from
// them once unblinded.

#ifndef DEJARGON_EVALUATION_JUDGMENTS_HPP
#define DEJARGON_EVALUATION_JUDGMENTS_HPP

#include <chrono>
#include <ctime>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/csv.hpp"
#include "dejargon/core/error.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/core/text.hpp"
#include "dejargon/definitions/blinding.hpp"

namespace dejargon::evaluation {

using definitions::DefinitionMode;
using definitions::DefinitionPair;
using definitions::KeyStore;
using definitions::Slot;

enum class Verdict { correct, incorrect, not_applicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::correct: return "correct";
    case Verdict::incorrect: return "incorrect";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "not_applicable";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "correct") return Verdict::correct;
  if (s == "incorrect") return Verdict::incorrect;
  if (s == "not_applicable") return Verdict::not_applicable;
  throw ParseError(fmt::format("unknown verdict '{}'", s));
}

enum class Preference { slot_a, slot_b, tie };

inline std::string to_string(Preference p) {
  switch (p) {
    case Preference::slot_a: return "slot_a";
    case Preference::slot_b: return "slot_b";
    case Preference::tie: return "tie";
  }
  return "tie";
}

inline Preference preference_from_string(const std::string& s) {
  if (s == "slot_a") return Preference::slot_a;
  if (s == "slot_b") return Preference::slot_b;
  if (s == "tie") return Preference::tie;
  throw ParseError(fmt::format("unknown preference '{}'", s));
}

struct JudgmentRecord {
  std::string pair_id;
  std::string reader_id;
  Verdict accuracy_a = Verdict::not_applicable;
  Verdict accuracy_b = Verdict::not_applicable;
  std::optional<Preference> preference;
  std::string timestamp;

  Verdict accuracy(Slot s) const { return s == Slot::a ? accuracy_a : accuracy_b; }

  bool operator==(const JudgmentRecord&) const = default;
};

inline void to_json(json& j, const JudgmentRecord& r) {
  j = json{{"pair_id", r.pair_id},
           {"reader_id", r.reader_id},
           {"accuracy_a", to_string(r.accuracy_a)},
           {"accuracy_b", to_string(r.accuracy_b)},
           {"preference", r.preference ? json(to_string(*r.preference)) : json(nullptr)},
           {"timestamp", r.timestamp}};
}

inline void from_json(const json& j, JudgmentRecord& r) {
  r.pair_id = j.at("pair_id").get<std::string>();
  r.reader_id = j.at("reader_id").get<std::string>();
  r.accuracy_a = verdict_from_string(j.at("accuracy_a").get<std::string>());
  r.accuracy_b = verdict_from_string(j.at("accuracy_b").get<std::string>());
  const auto pref = optional_field<std::string>(j, "preference");
  r.preference = pref ? std::optional(preference_from_string(*pref)) : std::nullopt;
  r.timestamp = j.value("timestamp", "");
}

/// Checks a judgment against the pair it judges: an empty slot can only be
/// not_applicable, a present one needs a verdict, and a preference exists
/// exactly when both slots do.
inline void validate_against(const JudgmentRecord& r, const DefinitionPair& pair) {
  require(r.pair_id == pair.pair_id, "judgment: pair_id mismatch");
  require(r.reader_id == pair.reader_id,
          fmt::format("judgment: pair {} belongs to reader {}, not {}", pair.pair_id, pair.reader_id, r.reader_id));
  for (Slot s : {Slot::a, Slot::b}) {
    const bool present = pair.slot(s).has_value();
    const Verdict v = r.accuracy(s);
    if (!present) {
      require(v == Verdict::not_applicable,
              fmt::format("judgment: {} of pair {} is empty; its accuracy must be not_applicable", to_string(s),
                          pair.pair_id));
    } else {
      require(v != Verdict::not_applicable,
              fmt::format("judgment: {} of pair {} needs a correct/incorrect verdict", to_string(s), pair.pair_id));
    }
  }
  if (pair.complete()) {
    require(r.preference.has_value(), fmt::format("judgment: pair {} needs a preference", pair.pair_id));
  } else {
    require(!r.preference.has_value(),
            fmt::format("judgment: pair {} has an empty slot; no preference allowed", pair.pair_id));
  }
}

/// Append-only JSONL log, one record per (pair_id, reader_id). Appends are
/// serialized; existing lines are never rewritten.
class JudgmentLog {
 public:
  explicit JudgmentLog(fs::path path) : path_(std::move(path)) {
    for (const auto& row : read_jsonl(path_)) {
      JudgmentRecord r;
      try {
        r = row.get<JudgmentRecord>();
      } catch (const json::exception& e) {
        throw ParseError(fmt::format("{}: bad judgment: {}", path_.string(), e.what()), row.dump());
      }
      if (!seen_.insert({r.pair_id, r.reader_id}).second) {
        throw ParseError(fmt::format("{}: duplicate judgment for ({}, {})", path_.string(), r.pair_id, r.reader_id));
      }
      records_.push_back(std::move(r));
    }
  }

  const fs::path& path() const { return path_; }

  bool contains(const std::string& pair_id, const std::string& reader_id) const {
    std::lock_guard lock(mutex_);
    return seen_.count({pair_id, reader_id}) != 0;
  }

  void append(const JudgmentRecord& r) {
    std::lock_guard lock(mutex_);
    if (seen_.count({r.pair_id, r.reader_id})) {
      throw ConflictError(fmt::format("pair {} already judged by {}", r.pair_id, r.reader_id));
    }
    append_jsonl(path_, json(r));
    seen_.insert({r.pair_id, r.reader_id});
    records_.push_back(r);
  }

  std::vector<JudgmentRecord> records() const {
    std::lock_guard lock(mutex_);
    return records_;
  }

 private:
  fs::path path_;
  mutable std::mutex mutex_;
  std::set<std::pair<std::string, std::string>> seen_;
  std::vector<JudgmentRecord> records_;
};

inline std::vector<JudgmentRecord> load_judgments(const fs::path& path) { return JudgmentLog(path).records(); }

// ---------------------------------------------------------------------------
// Accuracy

struct AccuracyRow {
  std::size_t n = 0;
  std::size_t correct = 0;
  std::size_t incorrect = 0;
  std::size_t missing = 0;

  double pct(std::size_t count) const { return n ? 100.0 * static_cast<double>(count) / static_cast<double>(n) : 0.0; }
  double correct_pct() const { return pct(correct); }
  double incorrect_pct() const { return pct(incorrect); }
  double missing_pct() const { return pct(missing); }
};

/// Per method, over every judged item. An empty slot or a not_applicable
/// verdict counts as missing, so items whose rag retrieval found nothing stay
/// in the rag denominator.
inline std::map<DefinitionMode, AccuracyRow> accuracy_summary(const std::vector<JudgmentRecord>& judgments,
                                                              const KeyStore& keys) {
  std::map<DefinitionMode, AccuracyRow> rows{{DefinitionMode::abstract_only, {}}, {DefinitionMode::rag, {}}};
  for (const auto& j : judgments) {
    const auto& key = keys.at(j.pair_id);
    for (Slot s : {Slot::a, Slot::b}) {
      AccuracyRow& row = rows[key.method_of(s)];
      ++row.n;
      switch (j.accuracy(s)) {
        case Verdict::correct: ++row.correct; break;
        case Verdict::incorrect: ++row.incorrect; break;
        case Verdict::not_applicable: ++row.missing; break;
      }
    }
  }
  return rows;
}

inline std::string accuracy_csv(const std::map<DefinitionMode, AccuracyRow>& rows) {
  csv::Table table({"method", "n", "correct", "incorrect", "missing", "correct_pct", "incorrect_pct", "missing_pct"});
  for (DefinitionMode m : {DefinitionMode::rag, DefinitionMode::abstract_only}) {
    const auto it = rows.find(m);
    if (it == rows.end()) continue;
    const AccuracyRow& r = it->second;
    table.add_row({profiles::to_string(m), std::to_string(r.n), std::to_string(r.correct), std::to_string(r.incorrect),
                   std::to_string(r.missing), csv::number(r.correct_pct(), 1), csv::number(r.incorrect_pct(), 1),
                   csv::number(r.missing_pct(), 1)});
  }
  return table.str();
}

// ---------------------------------------------------------------------------
// Pairwise quality

struct WinLossTie {
  std::size_t wins = 0;
  std::size_t losses = 0;
  std::size_t ties = 0;

  std::size_t total() const { return wins + losses + ties; }
  double pct(std::size_t c) const {
    return total() ? 100.0 * static_cast<double>(c) / static_cast<double>(total()) : 0.0;
  }
  double win_pct() const { return pct(wins); }
  double loss_pct() const { return pct(losses); }
  double tie_pct() const { return pct(ties); }
};

/// Scope "overall" plus one scope per reader.
struct QualityTable {
  std::map<std::string, std::map<DefinitionMode, WinLossTie>> by_scope;
  /// Per scope: judgments without a preference (an empty slot), left out
  /// of the win/loss/tie counts.
  std::map<std::string, std::size_t> excluded;
};

inline constexpr const char* kOverallScope = "overall";

inline QualityTable win_loss_tie(const std::vector<JudgmentRecord>& judgments, const KeyStore& keys) {
  if (judgments.empty()) throw PreconditionError("win_loss_tie: no judgments");
  QualityTable table;
  for (const auto& j : judgments) {
    const auto& key = keys.at(j.pair_id);
    for (const std::string& scope : {j.reader_id, std::string(kOverallScope)}) {
      if (!j.preference) {
        ++table.excluded[scope];
        continue;
      }
      auto& cell = table.by_scope[scope];
      if (*j.preference == Preference::tie) {
        ++cell[DefinitionMode::abstract_only].ties;
        ++cell[DefinitionMode::rag].ties;
        continue;
      }
      const DefinitionMode winner = key.method_of(*j.preference == Preference::slot_a ? Slot::a : Slot::b);
      const DefinitionMode loser = winner == DefinitionMode::rag ? DefinitionMode::abstract_only : DefinitionMode::rag;
      ++cell[winner].wins;
      ++cell[loser].losses;
    }
  }
  if (table.by_scope.empty()) throw PreconditionError("win_loss_tie: no judgment carries a preference");
  return table;
}

/// Reader scopes in id order, then "overall"; rag before abstract_only.
inline std::string quality_csv(const QualityTable& t) {
  csv::Table table({"reader_id", "method", "n", "win_pct", "loss_pct", "tie_pct", "excluded"});
  std::vector<std::string> scopes;
  std::set<std::string> seen;
  for (const auto& [scope, _] : t.by_scope) seen.insert(scope);
  for (const auto& [scope, _] : t.excluded) seen.insert(scope);
  for (const auto& scope : seen) {
    if (scope != kOverallScope) scopes.push_back(scope);
  }
  scopes.push_back(kOverallScope);
  for (const auto& scope : scopes) {
    const auto it = t.by_scope.find(scope);
    const auto ex = t.excluded.find(scope);
    const std::size_t excluded = ex == t.excluded.end() ? 0 : ex->second;
    for (DefinitionMode m : {DefinitionMode::rag, DefinitionMode::abstract_only}) {
      const WinLossTie w = it == t.by_scope.end() ? WinLossTie{} : it->second.at(m);
      table.add_row({scope, profiles::to_string(m), std::to_string(w.total()), csv::number(w.win_pct(), 1),
                     csv::number(w.loss_pct(), 1), csv::number(w.tie_pct(), 1), std::to_string(excluded)});
    }
  }
  return table.str();
}

// ---------------------------------------------------------------------------
// Interactive capture

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CaptureOptions {
  std::function<std::string()> clock = utc_timestamp;
};

namespace detail {

/// Reads lines until `parse` accepts one; nullopt on end of input or "quit".
template <class T>
std::optional<T> ask(std::istream& in, std::ostream& out, const std::string& prompt,
                     const std::function<std::optional<T>(const std::string&)>& parse, const std::string& help) {
  std::string line;
  while (true) {
    out << prompt << std::flush;
    if (!std::getline(in, line)) return std::nullopt;
    const std::string answer = text::to_lower_ascii(text::trim(line));
    if (answer == "q" || answer == "quit") return std::nullopt;
    if (auto value = parse(answer)) return value;
    out << help << '\n';
  }
}

}  // namespace detail

/// Walks the reader's not-yet-judged pairs in file order. For each pair:
/// the term and abstract, both slots, an accuracy verdict per non-empty slot,
/// then a preference when both slots are filled. Each finished pair is
/// appended to the log immediately, so an interrupted session resumes where
/// it stopped. Returns the number of records appended.
inline std::size_t capture_judgments(const std::vector<DefinitionPair>& pairs, const std::string& reader_id,
                                     JudgmentLog& log, std::istream& in, std::ostream& out,
                                     const CaptureOptions& options = {}) {
  std::vector<const DefinitionPair*> pending;
  for (const auto& p : pairs) {
    if (p.reader_id == reader_id && !log.contains(p.pair_id, reader_id)) pending.push_back(&p);
  }
  out << fmt::format("{} pair(s) to judge for {}.\n", pending.size(), reader_id);

  const std::function<std::optional<Verdict>(const std::string&)> parse_verdict =
      [](const std::string& a) -> std::optional<Verdict> {
    if (a == "c" || a == "correct" || a == "y") return Verdict::correct;
    if (a == "i" || a == "incorrect" || a == "n") return Verdict::incorrect;
    return std::nullopt;
  };

  std::size_t appended = 0;
  std::size_t position = 0;
  for (const DefinitionPair* p : pending) {
    ++position;
    out << fmt::format("\n[{}/{}] {}  term: \"{}\"\n\nAbstract:\n{}\n", position, pending.size(), p->pair_id, p->term,
                       p->abstract);
    for (Slot s : {Slot::a, Slot::b}) {
      const auto& text = p->slot(s);
      out << fmt::format("\nDefinition {}:\n{}\n", s == Slot::a ? "A" : "B", text ? *text : "(no definition)");
    }
    out << '\n';

    JudgmentRecord record{p->pair_id, reader_id, Verdict::not_applicable, Verdict::not_applicable, std::nullopt, {}};
    bool stopped = false;
    for (Slot s : {Slot::a, Slot::b}) {
      if (!p->slot(s)) continue;
      const auto v = detail::ask<Verdict>(in, out, fmt::format("Is definition {} accurate? [correct/incorrect] ",
                                                                s == Slot::a ? "A" : "B"),
                                          parse_verdict, "Please answer 'correct' or 'incorrect'.");
      if (!v) {
        stopped = true;
        break;
      }
      (s == Slot::a ? record.accuracy_a : record.accuracy_b) = *v;
    }
    if (stopped) break;

    const bool complete = p->complete();
    const std::function<std::optional<std::optional<Preference>>(const std::string&)> parse_pref =
        [complete](const std::string& a) -> std::optional<std::optional<Preference>> {
      std::optional<Preference> pref;
      if (a == "a" || a == "slot_a") pref = Preference::slot_a;
      if (a == "b" || a == "slot_b") pref = Preference::slot_b;
      if (a == "t" || a == "tie") pref = Preference::tie;
      if (complete) {
        if (pref) return std::optional<std::optional<Preference>>(pref);
        return std::nullopt;
      }
      if (pref) return std::nullopt;
      if (a == "none" || a == "-" || a.empty()) return std::optional<std::optional<Preference>>(std::optional<Preference>());
      return std::nullopt;
    };
    const auto pref = detail::ask<std::optional<Preference>>(
        in, out,
        complete ? "Which definition is better? [slot_a/slot_b/tie] "
                 : "Only one definition is available; no preference can be recorded. [none] ",
        parse_pref,
        complete ? "Please answer 'slot_a', 'slot_b' or 'tie'."
                 : "A preference needs two definitions; answer 'none' to continue.");
    if (!pref) break;
    record.preference = *pref;
    record.timestamp = options.clock();
    validate_against(record, *p);
    log.append(record);
    ++appended;
  }
  return appended;
}

}  // namespace dejargon::evaluation

#endif  // DEJARGON_EVALUATION_JUDGMENTS_HPP
