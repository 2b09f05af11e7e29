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

#ifndef DEJARGON_CORPUS_FULLTEXT_HPP
#define DEJARGON_CORPUS_FULLTEXT_HPP

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include <fmt/core.h>

#include "dejargon/core/http.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/core/text.hpp"
#include "dejargon/corpus/article.hpp"

namespace dejargon::corpus {

struct FulltextConfig {
  /// Shell command that prints plain text for the document at {input}.
  std::string converter_command = "pdftotext -enc UTF-8 {input} -";
  /// Remote sources resolve to this URL with {id} substituted.
  std::string remote_pdf_url = "https://arxiv.org/pdf/{id}";
  fs::path download_dir = fs::temp_directory_path() / "dejargon-pdf";
};

namespace detail {

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += '\'';
  return out;
}

inline std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

/// Runs `command`, returning its stdout when it exits with status 0.
inline std::optional<std::string> run_capture(const std::string& command) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen((command + " 2>/dev/null").c_str(), "r"), pclose);
  if (!pipe) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) return std::nullopt;
  return out;
}

inline ArticleRecord failed(ArticleRecord record) {
  record.fulltext.reset();
  record.fulltext_status = FulltextStatus::extraction_failed;
  return record;
}

}  // namespace detail

/// Plain-text (.txt) files are taken verbatim; anything else goes through the
/// configured converter. Extraction problems are reported via the returned
/// record's status and never thrown.
inline ArticleRecord attach_fulltext(ArticleRecord record, const fs::path& source,
                                     const FulltextConfig& config = {}) {
  std::error_code ec;
  if (!fs::is_regular_file(source, ec)) return detail::failed(std::move(record));
  std::optional<std::string> body;
  if (source.extension() == ".txt") {
    try {
      body = read_text_file(source);
    } catch (const Error&) {
      return detail::failed(std::move(record));
    }
  } else {
    body = detail::run_capture(
        detail::replace_all(config.converter_command, "{input}", detail::shell_quote(source.string())));
  }
  if (!body || text::trim(*body).empty()) return detail::failed(std::move(record));
  record.fulltext = std::move(*body);
  record.fulltext_status = FulltextStatus::extracted;
  return record;
}

/// Downloads the article's PDF by id, then extracts it like a local file.
inline ArticleRecord attach_remote_fulltext(ArticleRecord record, http::Transport& transport,
                                            const FulltextConfig& config = {}) {
  const std::string url = detail::replace_all(config.remote_pdf_url, "{id}", record.arxiv_id);
  try {
    const http::Response r = transport.send({.method = "GET", .url = url});
    if (r.status != 200 || r.body.empty()) return detail::failed(std::move(record));
    std::string name = record.arxiv_id;
    for (char& c : name) {
      if (c == '/') c = '_';
    }
    const fs::path pdf = config.download_dir / (name + ".pdf");
    write_text_atomic(pdf, r.body);
    return attach_fulltext(std::move(record), pdf, config);
  } catch (const Error&) {
    return detail::failed(std::move(record));
  }
}

}  // namespace dejargon::corpus

#endif  // DEJARGON_CORPUS_FULLTEXT_HPP
