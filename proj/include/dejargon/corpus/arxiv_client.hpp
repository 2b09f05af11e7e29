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

// Category listings from the arXiv export API, paginated and rate limited.

#ifndef DEJARGON_CORPUS_ARXIV_CLIENT_HPP
#define DEJARGON_CORPUS_ARXIV_CLIENT_HPP

#include <algorithm>
#include <chrono>
#include <future>
#include <mutex>
#include <regex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/http.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/corpus/article.hpp"
#include "dejargon/corpus/atom_feed.hpp"

namespace dejargon::corpus {

/// Enforces a minimum delay between consecutive requests, across threads.
class RateLimiter {
 public:
  explicit RateLimiter(std::chrono::milliseconds min_interval) : min_interval_(min_interval) {}

  void wait() {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    if (last_ && now - *last_ < min_interval_) {
      std::this_thread::sleep_for(min_interval_ - (now - *last_));
    }
    last_ = std::chrono::steady_clock::now();
  }

 private:
  std::mutex mutex_;
  std::chrono::milliseconds min_interval_;
  std::optional<std::chrono::steady_clock::time_point> last_;
};

/// Which timestamp decides membership in the date window.
enum class DateField { updated, submitted };

struct ListingConfig {
  std::string base_url = "http://export.arxiv.org/api/query";
  std::size_t page_size = 100;
  DateField date_field = DateField::updated;
  std::chrono::milliseconds request_delay{3000};
  int max_attempts = 3;
  std::chrono::milliseconds retry_backoff{2000};
};

inline std::string listing_url(const ListingConfig& config, const std::string& category,
                               const DateRange& window, std::size_t start) {
  const auto stamp = [](const Date& d) { return fmt::format("{:04d}{:02d}{:02d}", d.year, d.month, d.day); };
  const char* field = config.date_field == DateField::updated ? "lastUpdatedDate" : "submittedDate";
  return fmt::format(
      "{}?search_query=cat:{}+AND+{}:%5B{}0000+TO+{}2359%5D&start={}&max_results={}"
      "&sortBy={}&sortOrder=ascending",
      config.base_url, category, field, stamp(window.from), stamp(window.to), start,
      config.page_size, field);
}

namespace detail {

inline std::string get_with_retry(http::Transport& transport, RateLimiter& limiter,
                                  const ListingConfig& config, const std::string& url) {
  std::string last_error;
  for (int attempt = 1; attempt <= config.max_attempts; ++attempt) {
    limiter.wait();
    try {
      const http::Response r = transport.send({.method = "GET", .url = url});
      if (r.status == 200) return r.body;
      last_error = fmt::format("HTTP {}", r.status);
      if (!http::is_transient_status(r.status)) {
        throw Error(fmt::format("arXiv listing {} failed: {}", url, last_error));
      }
    } catch (const RetryableError& e) {
      last_error = e.what();
    }
    if (attempt < config.max_attempts) std::this_thread::sleep_for(config.retry_backoff * attempt);
  }
  throw RetryableError(fmt::format("arXiv listing {} failed after {} attempts: {}", url,
                                   config.max_attempts, last_error));
}

}  // namespace detail

/// Lists every record of `category` whose chosen timestamp falls in `window`.
/// Pages until the feed's total is reached or a page comes back empty.
inline std::vector<ArticleRecord> fetch_listing(const std::string& category, const DateRange& window,
                                                http::Transport& transport, RateLimiter& limiter,
                                                const ListingConfig& config = {}) {
  require(is_valid_category(category), fmt::format("invalid arXiv category '{}'", category));
  require(!window.empty(), "date window is empty");
  require(config.page_size > 0, "page size must be positive");

  std::vector<ArticleRecord> out;
  std::set<std::string> seen;
  std::size_t start = 0;
  while (true) {
    const std::string body =
        detail::get_with_retry(transport, limiter, config, listing_url(config, category, window, start));
    FeedPage page = parse_atom_feed(body);
    if (page.entries.empty()) break;
    start += page.entries.size();
    for (auto& record : page.entries) {
      const Date stamp = config.date_field == DateField::updated
                             ? record.updated_at
                             : record.published_at.value_or(record.updated_at);
      if (!record.in_category(category) || !window.contains(stamp)) continue;
      if (seen.insert(record.arxiv_id).second) out.push_back(std::move(record));
    }
    if (start >= page.total_results) break;
  }
  return out;
}

/// Fetches several categories concurrently through one shared limiter and
/// merges them, first occurrence winning, sorted by arxiv_id.
inline std::vector<ArticleRecord> fetch_listings(const std::vector<std::string>& categories,
                                                 const DateRange& window, http::Transport& transport,
                                                 RateLimiter& limiter, const ListingConfig& config = {}) {
  std::vector<std::future<std::vector<ArticleRecord>>> jobs;
  for (const auto& category : categories) {
    jobs.push_back(std::async(std::launch::async, [&, category] {
      return fetch_listing(category, window, transport, limiter, config);
    }));
  }
  std::vector<ArticleRecord> merged;
  std::set<std::string> seen;
  for (auto& job : jobs) {
    for (auto& record : job.get()) {
      if (seen.insert(record.arxiv_id).second) merged.push_back(std::move(record));
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const ArticleRecord& a, const ArticleRecord& b) { return a.arxiv_id < b.arxiv_id; });
  return merged;
}

/// Serves listing pages from a directory of saved feeds named
/// `<category>_<start>.xml`; an absent page reads as an empty feed.
class FeedFixtureTransport final : public http::Transport {
 public:
  explicit FeedFixtureTransport(fs::path dir) : dir_(std::move(dir)) {}

  http::Response send(const http::Request& request) override {
    static const std::regex kCat(R"(cat:([^+&]+))");
    static const std::regex kStart(R"([?&]start=(\d+))");
    std::smatch cat;
    std::smatch start;
    if (!std::regex_search(request.url, cat, kCat) || !std::regex_search(request.url, start, kStart)) {
      return {.status = 400, .body = "unrecognized listing URL"};
    }
    {
      std::lock_guard lock(mutex_);
      ++calls_;
    }
    const fs::path file = dir_ / fmt::format("{}_{}.xml", cat[1].str(), start[1].str());
    if (!fs::exists(file)) {
      return {.status = 200,
              .body = R"(<?xml version="1.0"?><feed xmlns="http://www.w3.org/2005/Atom"></feed>)"};
    }
    return {.status = 200, .body = read_text_file(file)};
  }

  std::size_t calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
  }

 private:
  fs::path dir_;
  mutable std::mutex mutex_;
  std::size_t calls_ = 0;
};

}  // namespace dejargon::corpus

#endif  // DEJARGON_CORPUS_ARXIV_CLIENT_HPP
