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

// Drives the dejargon binary through the whole pipeline on the committed
// fixture corpus. The same sequence records fixtures (against the stub
// provider) and replays them (offline).

#ifndef DEJARGON_TESTS_PIPELINE_HPP
#define DEJARGON_TESTS_PIPELINE_HPP

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/hash.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/definitions/blinding.hpp"

namespace pipeline {

using dejargon::json;
namespace fs = std::filesystem;

struct Run {
  bool ok = true;
  std::string failed_step;
  std::size_t network_calls = 0;
  double seconds = 0.0;
  /// results/<name>.csv -> contents
  std::map<std::string, std::string> csvs;
  std::string log;
};

inline std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

/// Answers an annotator would type for every pair of `reader`, derived only
/// from the blinded file. Mostly correct, a few incorrect, preferences
/// spread over both slots and ties.
inline std::string scripted_answers(const fs::path& pairs_file, const std::string& reader) {
  std::string out;
  for (const auto& p : dejargon::definitions::load_pairs(pairs_file)) {
    if (p.reader_id != reader) continue;
    const std::uint64_t h = dejargon::splitmix64(dejargon::fnv1a64(p.pair_id));
    if (p.slot_a) out += (h % 11 == 0) ? "incorrect\n" : "correct\n";
    if (p.slot_b) out += ((h >> 8) % 13 == 0) ? "incorrect\n" : "correct\n";
    if (p.complete()) {
      static const char* kPrefs[] = {"slot_a", "slot_b", "tie"};
      out += std::string(kPrefs[(h >> 16) % 3]) + "\n";
    } else {
      out += "none\n";
    }
  }
  return out;
}

/// `mode` is replay or record; `base_url` is only used when recording.
inline Run run(const fs::path& cli, const fs::path& fixtures, const fs::path& ws, const std::string& mode,
               const std::string& base_url = {}) {
  Run r;
  const auto start = std::chrono::steady_clock::now();
  fs::remove_all(ws);
  fs::create_directories(ws);
  const fs::path log = ws.parent_path() / (ws.filename().string() + ".log");
  fs::remove(log);

  const auto step = [&](const std::string& name, const std::string& args, const std::string& stdin_file = {}) {
    if (!r.ok) return;
    std::string cmd = fmt::format("{} -w {} {} >> {} 2>&1", quote(cli), quote(ws), args, quote(log));
    if (!stdin_file.empty()) cmd += " < " + quote(stdin_file);
    std::ofstream(log, std::ios::app) << "$ " << name << "\n";
    if (std::system(cmd.c_str()) != 0) {
      r.ok = false;
      r.failed_step = name;
    }
  };
  const std::string llm = fmt::format("--mode {} --fixtures {}", mode, quote(fixtures / "llm"));

  step("init", "init");
  if (r.ok) {
    json settings = dejargon::read_json_file(ws / "dejargon.json");
    settings["chunking"] = {{"size", 800}, {"overlap", 100}};
    // The stub's bag-of-words cosines run lower than real embeddings.
    settings["retrieval"]["threshold"] = 0.15;
    if (!base_url.empty()) settings["api_base_url"] = base_url;
    dejargon::write_json_file(ws / "dejargon.json", settings);
  }
  step("ingest", fmt::format("ingest --categories cs.AI,cs.HC,cs.CY --from 2024-03-01 --to 2024-03-31 "
                             "--feed-fixtures {} --fulltext-dir {}",
                             quote(fixtures / "feeds"), quote(fixtures / "fulltext")));
  step("sample", "sample --fraction 1.0 --seed 7");
  step("profiles rid0", fmt::format("profiles add --file {}", quote(fixtures / "profiles" / "rid0.json")));
  step("profiles rid1", fmt::format("profiles add --file {}", quote(fixtures / "profiles" / "rid1.json")));
  step("import", fmt::format("import-annotations --source human --file {}",
                             quote(fixtures / "annotations" / "human.jsonl")));
  step("identify rid0", llm + " identify --reader rid0 --split test");
  step("identify rid1", llm + " identify --reader rid1 --split test");
  step("define", llm + " define --method both --source human");
  step("pairs", "pairs --seed 42");
  for (const std::string reader : {"rid0", "rid1"}) {
    if (!r.ok) break;
    const fs::path answers = ws / fmt::format("answers_{}.txt", reader);
    std::ofstream(answers) << scripted_answers(ws / "pairs" / "pairs.jsonl", reader);
    step("annotate " + reader, "annotate --reader " + reader, answers.string());
  }
  step("evaluate accuracy", "evaluate accuracy");
  step("evaluate quality", "evaluate quality");
  step("evaluate counts", "evaluate counts");
  step("evaluate stats", "evaluate stats");
  step("score exact", "score --policy exact");
  step("score subsumption", "score --policy subsumption");

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (fs::exists(log)) r.log = dejargon::read_text_file(log);
  static const std::regex kCalls(R"(network_calls (\d+))");
  for (std::sregex_iterator it(r.log.begin(), r.log.end(), kCalls), end; it != end; ++it) {
    r.network_calls += std::stoul((*it)[1].str());
  }
  if (fs::exists(ws / "results")) {
    for (const auto& e : fs::directory_iterator(ws / "results")) {
      r.csvs[e.path().filename().string()] = dejargon::read_text_file(e.path());
    }
  }
  return r;
}

}  // namespace pipeline

#endif  // DEJARGON_TESTS_PIPELINE_HPP
