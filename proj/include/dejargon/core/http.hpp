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

// Thin client-side HTTP layer over cpp-httplib. Everything above this file
// talks to the network through the `HttpTransport` interface so tests can
// swap in scripted or replayed responses.

#ifndef DEJARGON_CORE_HTTP_HPP
#define DEJARGON_CORE_HTTP_HPP

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include <chrono>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include <fmt/core.h>
#include <httplib.h>

#include "dejargon/core/error.hpp"

namespace dejargon::http {

struct Response {
  int status = 0;
  std::string body;
  /// Seconds, from a Retry-After header when the server sent one.
  std::optional<double> retry_after;
};

struct Request {
  std::string method = "GET";
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::string content_type = "application/json";
};

class Transport {
 public:
  virtual ~Transport() = default;
  /// Throws RetryableError when no response could be obtained at all.
  virtual Response send(const Request& request) = 0;
};

struct UrlParts {
  std::string origin;  // scheme://host[:port]
  std::string path;    // always starts with '/'
};

inline UrlParts split_url(const std::string& url) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) throw PreconditionError(fmt::format("bad URL '{}'", url));
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

inline std::optional<double> parse_retry_after(const std::string& value) {
  if (value.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double seconds = std::stod(value, &used);
    if (used == 0 || seconds < 0) return std::nullopt;
    return seconds;
  } catch (const std::exception&) {
    return std::nullopt;  // HTTP-date form is not honored
  }
}

class LiveTransport final : public Transport {
 public:
  explicit LiveTransport(std::chrono::seconds timeout = std::chrono::seconds(60))
      : timeout_(timeout) {}

  Response send(const Request& request) override {
    const UrlParts parts = split_url(request.url);
    httplib::Client client(parts.origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    client.set_follow_location(true);
    httplib::Headers headers;
    for (const auto& [k, v] : request.headers) headers.emplace(k, v);

    httplib::Result result =
        request.method == "POST"
            ? client.Post(parts.path, headers, request.body, request.content_type)
            : client.Get(parts.path, headers);
    if (!result) {
      throw RetryableError(fmt::format("{} {} failed: {}", request.method, request.url,
                                       httplib::to_string(result.error())));
    }
    Response response;
    response.status = result->status;
    response.body = result->body;
    response.retry_after = parse_retry_after(result->get_header_value("Retry-After"));
    return response;
  }

 private:
  std::chrono::seconds timeout_;
};

inline bool is_transient_status(int status) {
  return status == 408 || status == 429 || (status >= 500 && status <= 599);
}

}  // namespace dejargon::http

#endif  // DEJARGON_CORE_HTTP_HPP
