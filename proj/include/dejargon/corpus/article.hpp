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

#ifndef DEJARGON_CORPUS_ARTICLE_HPP
#define DEJARGON_CORPUS_ARTICLE_HPP

#include <algorithm>
#include <compare>
#include <cstdio>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/json_io.hpp"

namespace dejargon::corpus {

/// Calendar date, no time zone.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  /// Accepts "YYYY-MM-DD" optionally followed by a time part ("T..."), which
  /// is how Atom feeds stamp entries.
  static Date parse(std::string_view s) {
    Date d;
    char tail = '\0';
    const std::string str(s.substr(0, std::min<std::size_t>(s.size(), 11)));
    const int n = std::sscanf(str.c_str(), "%4d-%2d-%2d%c", &d.year, &d.month, &d.day, &tail);
    if (n < 3 || d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31 ||
        (n == 4 && tail != 'T' && tail != ' ')) {
      throw ParseError(fmt::format("invalid date '{}'", s), std::string(s));
    }
    return d;
  }

  std::string str() const { return fmt::format("{:04d}-{:02d}-{:02d}", year, month, day); }
};

/// Inclusive on both ends.
struct DateRange {
  Date from;
  Date to;

  bool empty() const { return to < from; }
  bool contains(const Date& d) const { return !(d < from) && !(to < d); }
};

enum class FulltextStatus { absent, extracted, extraction_failed };

inline std::string to_string(FulltextStatus s) {
  switch (s) {
    case FulltextStatus::absent: return "absent";
    case FulltextStatus::extracted: return "extracted";
    case FulltextStatus::extraction_failed: return "extraction_failed";
  }
  return "absent";
}

inline FulltextStatus fulltext_status_from_string(std::string_view s) {
  if (s == "absent") return FulltextStatus::absent;
  if (s == "extracted") return FulltextStatus::extracted;
  if (s == "extraction_failed") return FulltextStatus::extraction_failed;
  throw ParseError(fmt::format("unknown fulltext_status '{}'", s));
}

/// "cs.HC", "math.OC", "physics.soc-ph", or an archive name alone.
inline bool is_valid_category(std::string_view code) {
  static const std::regex kPattern(R"(^[a-z][a-z-]*(\.[A-Za-z][A-Za-z-]*)?$)");
  return std::regex_match(code.begin(), code.end(), kPattern);
}

/// The computer science sub-categories of the arXiv taxonomy.
inline const std::vector<std::string>& cs_categories() {
  static const std::vector<std::string> kCodes = {
      "cs.AI", "cs.AR", "cs.CC", "cs.CE", "cs.CG", "cs.CL", "cs.CR", "cs.CV", "cs.CY", "cs.DB",
      "cs.DC", "cs.DL", "cs.DM", "cs.DS", "cs.ET", "cs.FL", "cs.GL", "cs.GR", "cs.GT", "cs.HC",
      "cs.IR", "cs.IT", "cs.LG", "cs.LO", "cs.MA", "cs.MM", "cs.MS", "cs.NA", "cs.NE", "cs.NI",
      "cs.OH", "cs.OS", "cs.PF", "cs.PL", "cs.RO", "cs.SC", "cs.SD", "cs.SE", "cs.SI", "cs.SY"};
  return kCodes;
}

struct ArticleRecord {
  std::string arxiv_id;
  std::string title;
  std::string abstract;
  std::vector<std::string> authors;
  std::string primary_category;
  std::vector<std::string> all_categories;
  std::optional<std::string> comments;
  Date updated_at;
  std::optional<Date> published_at;
  std::optional<std::string> fulltext;
  FulltextStatus fulltext_status = FulltextStatus::absent;

  bool operator==(const ArticleRecord&) const = default;

  bool in_category(std::string_view code) const {
    return std::find(all_categories.begin(), all_categories.end(), code) != all_categories.end();
  }

  void validate() const {
    if (arxiv_id.empty()) throw PreconditionError("article: empty arxiv_id");
    if (text_is_blank(abstract)) {
      throw PreconditionError(fmt::format("article {}: empty abstract", arxiv_id));
    }
    if (!in_category(primary_category)) {
      throw PreconditionError(fmt::format(
          "article {}: primary category {} not among its categories", arxiv_id, primary_category));
    }
  }

 private:
  static bool text_is_blank(std::string_view s) {
    return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
  }
};

inline void to_json(json& j, const Date& d) { j = d.str(); }
inline void from_json(const json& j, Date& d) { d = Date::parse(j.get<std::string>()); }

inline void to_json(json& j, const ArticleRecord& a) {
  j = json{{"arxiv_id", a.arxiv_id},
           {"title", a.title},
           {"abstract", a.abstract},
           {"authors", a.authors},
           {"primary_category", a.primary_category},
           {"all_categories", a.all_categories},
           {"comments", a.comments ? json(*a.comments) : json(nullptr)},
           {"updated_at", a.updated_at},
           {"published_at", a.published_at ? json(*a.published_at) : json(nullptr)},
           {"fulltext", a.fulltext ? json(*a.fulltext) : json(nullptr)},
           {"fulltext_status", to_string(a.fulltext_status)}};
}

inline void from_json(const json& j, ArticleRecord& a) {
  a.arxiv_id = j.at("arxiv_id").get<std::string>();
  a.title = j.at("title").get<std::string>();
  a.abstract = j.at("abstract").get<std::string>();
  a.authors = j.value("authors", std::vector<std::string>{});
  a.primary_category = j.at("primary_category").get<std::string>();
  a.all_categories = j.at("all_categories").get<std::vector<std::string>>();
  a.comments = optional_field<std::string>(j, "comments");
  a.updated_at = j.at("updated_at").get<Date>();
  a.published_at = optional_field<Date>(j, "published_at");
  a.fulltext = optional_field<std::string>(j, "fulltext");
  a.fulltext_status = fulltext_status_from_string(j.value("fulltext_status", "absent"));
}

/// Metadata view used by listings: everything but the fulltext body.
inline json metadata_json(const ArticleRecord& a) {
  json j = a;
  j.erase("fulltext");
  return j;
}

}  // namespace dejargon::corpus

#endif  // DEJARGON_CORPUS_ARTICLE_HPP
