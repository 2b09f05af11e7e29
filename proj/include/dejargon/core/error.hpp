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

#ifndef DEJARGON_CORE_ERROR_HPP
#define DEJARGON_CORE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace dejargon {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input data (feed, model reply, file) could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string raw = {})
      : Error(what), raw_(std::move(raw)) {}

  /// The offending raw input, kept for audit.
  const std::string& raw() const noexcept { return raw_; }

 private:
  std::string raw_;
};

/// Transient failure (network, rate limit); the operation may be retried.
class RetryableError : public Error {
 public:
  using Error::Error;
};

/// Replay mode was asked for a response that was never recorded.
class CacheMissError : public Error {
 public:
  CacheMissError(const std::string& what, std::string key)
      : Error(what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Duplicate write to an append-only store.
class ConflictError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw PreconditionError(message);
}

}  // namespace dejargon

#endif  // DEJARGON_CORE_ERROR_HPP
