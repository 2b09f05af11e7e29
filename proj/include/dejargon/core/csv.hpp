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

#ifndef DEJARGON_CORE_CSV_HPP
#define DEJARGON_CORE_CSV_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/core.h>

namespace dejargon::csv {

inline std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Fixed-precision rendering so tables are byte-stable across runs.
inline std::string number(double value, int precision = 4) {
  return fmt::format("{:.{}f}", value, precision);
}

inline std::string number(const std::optional<double>& value, int precision = 4) {
  return value ? number(*value, precision) : std::string();
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::size_t size() const { return rows_.size(); }

  std::string str() const {
    std::string out;
    append_line(out, header_);
    for (const auto& row : rows_) append_line(out, row);
    return out;
  }

 private:
  static void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += escape(cells[i]);
    }
    out += '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace dejargon::csv

#endif  // DEJARGON_CORE_CSV_HPP
