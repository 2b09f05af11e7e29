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

// Parser for one page of the arXiv export API's Atom response.

#ifndef DEJARGON_CORPUS_ATOM_FEED_HPP
#define DEJARGON_CORPUS_ATOM_FEED_HPP

#include <cstddef>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/text.hpp"
#include "dejargon/corpus/article.hpp"

namespace dejargon::corpus {

struct FeedPage {
  std::size_t total_results = 0;
  std::size_t start_index = 0;
  std::vector<ArticleRecord> entries;
};

/// "http://arxiv.org/abs/2403.01234v2" -> "2403.01234"; old-style ids such as
/// "cs/0112017v1" keep their archive prefix.
inline std::string arxiv_id_from_url(const std::string& url) {
  static const std::regex kAbs(R"(arxiv\.org/abs/(.+?)(v\d+)?$)");
  std::smatch m;
  if (std::regex_search(url, m, kAbs)) return m[1].str();
  return {};
}

namespace detail {

namespace pt = boost::property_tree;

inline std::string child_text(const pt::ptree& node, const char* path) {
  const auto child = node.get_child_optional(path);
  return child ? text::collapse_whitespace(child->data()) : std::string();
}

inline ArticleRecord parse_entry(const pt::ptree& entry, std::size_t index) {
  ArticleRecord a;
  const std::string raw_id = child_text(entry, "id");
  const auto fail = [&](const std::string& why) {
    return ParseError(fmt::format("feed entry #{} ({}): {}", index,
                                  raw_id.empty() ? "<no id>" : raw_id, why));
  };
  if (raw_id.find("api/errors") != std::string::npos) {
    throw fail("API error entry: " + child_text(entry, "summary"));
  }
  a.arxiv_id = arxiv_id_from_url(raw_id);
  if (a.arxiv_id.empty()) throw fail("missing or unrecognized <id>");
  a.title = child_text(entry, "title");
  a.abstract = child_text(entry, "summary");
  if (a.title.empty()) throw fail("missing <title>");
  if (a.abstract.empty()) throw fail("missing <summary>");

  const std::string updated = child_text(entry, "updated");
  const std::string published = child_text(entry, "published");
  try {
    if (!published.empty()) a.published_at = Date::parse(published);
    a.updated_at = updated.empty() ? a.published_at.value_or(Date{}) : Date::parse(updated);
  } catch (const ParseError& e) {
    throw fail(e.what());
  }
  if (updated.empty() && published.empty()) throw fail("missing <updated>/<published>");

  for (const auto& [name, child] : entry) {
    if (name == "author") {
      const std::string author = child_text(child, "name");
      if (!author.empty()) a.authors.push_back(author);
    } else if (name == "category") {
      const std::string term = child.get<std::string>("<xmlattr>.term", "");
      if (!term.empty() && !a.in_category(term)) a.all_categories.push_back(term);
    } else if (name == "arxiv:primary_category") {
      a.primary_category = child.get<std::string>("<xmlattr>.term", "");
    } else if (name == "arxiv:comment") {
      const std::string comment = text::collapse_whitespace(child.data());
      if (!comment.empty()) a.comments = comment;
    }
  }
  if (a.primary_category.empty()) {
    if (a.all_categories.empty()) throw fail("no categories");
    a.primary_category = a.all_categories.front();
  }
  if (!a.in_category(a.primary_category)) a.all_categories.insert(a.all_categories.begin(), a.primary_category);
  return a;
}

}  // namespace detail

inline FeedPage parse_atom_feed(const std::string& xml) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(xml);
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(fmt::format("malformed Atom feed: {}", e.what()), xml);
  }
  const auto feed = tree.get_child_optional("feed");
  if (!feed) throw ParseError("Atom document has no <feed> root", xml);

  const auto count = [&](const pt::ptree& node) -> std::size_t {
    const std::string value(text::trim(node.data()));
    if (value.empty()) return 0;
    try {
      return std::stoul(value);
    } catch (const std::exception&) {
      throw ParseError(fmt::format("non-numeric feed counter '{}'", value), xml);
    }
  };

  FeedPage page;
  std::size_t index = 0;
  for (const auto& [name, node] : *feed) {
    if (name == "opensearch:totalResults") {
      page.total_results = count(node);
    } else if (name == "opensearch:startIndex") {
      page.start_index = count(node);
    } else if (name == "entry") {
      page.entries.push_back(detail::parse_entry(node, index++));
    }
  }
  return page;
}

}  // namespace dejargon::corpus

#endif  // DEJARGON_CORPUS_ATOM_FEED_HPP
