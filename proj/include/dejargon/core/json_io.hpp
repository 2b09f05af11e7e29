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

// File helpers for the JSON / JSONL stores.

#ifndef DEJARGON_CORE_JSON_IO_HPP
#define DEJARGON_CORE_JSON_IO_HPP

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <json.hpp>

#include "dejargon/core/error.hpp"

namespace dejargon {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError(fmt::format("cannot open {}", path.string()));
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Writes through a sibling temp file and renames, so readers never see a
/// half-written document.
inline void write_text_atomic(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write {}", tmp.string()));
    out << contents;
    if (!out.flush()) throw Error(fmt::format("short write to {}", tmp.string()));
  }
  fs::rename(tmp, path);
}

inline json read_json_file(const fs::path& path) {
  const std::string raw = read_text_file(path);
  try {
    return json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()), raw);
  }
}

inline void write_json_file(const fs::path& path, const json& doc) {
  write_text_atomic(path, doc.dump(2) + "\n");
}

inline std::vector<json> parse_jsonl(const std::string& contents, const std::string& origin) {
  std::vector<json> out;
  std::istringstream in(contents);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw ParseError(fmt::format("{}:{}: {}", origin, line_no, e.what()), line);
    }
  }
  return out;
}

/// Missing file reads as an empty log.
inline std::vector<json> read_jsonl(const fs::path& path) {
  if (!fs::exists(path)) return {};
  return parse_jsonl(read_text_file(path), path.string());
}

inline void write_jsonl(const fs::path& path, const std::vector<json>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += row.dump();
    out += '\n';
  }
  write_text_atomic(path, out);
}

inline void append_jsonl(const fs::path& path, const json& row) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(fmt::format("cannot append to {}", path.string()));
  out << row.dump() << '\n';
  if (!out.flush()) throw Error(fmt::format("short write to {}", path.string()));
}

template <class T>
std::optional<T> optional_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

}  // namespace dejargon

#endif  // DEJARGON_CORE_JSON_IO_HPP
