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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dejargon/core/csv.hpp"
#include "dejargon/core/error.hpp"
#include "dejargon/core/hash.hpp"
#include "dejargon/core/http.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/core/text.hpp"
#include "support/temp_dir.hpp"

namespace dejargon {
namespace {

using testing_support::TempDir;

TEST(Hash, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Hash, Fnv1aKnownVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Hash, UniformBelowStaysInRangeAndCoversIt) {
  std::mt19937_64 engine(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = uniform_below(engine, 7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(uniform_below(engine, 0), PreconditionError);
}

TEST(Text, TrimAndCaseHelpers) {
  EXPECT_EQ(text::trim("  a b \n"), "a b");
  EXPECT_EQ(text::trim(""), "");
  EXPECT_EQ(text::to_lower_ascii("MiXeD 42"), "mixed 42");
  EXPECT_TRUE(text::iequals_ascii("CS.hc", "cs.HC"));
  EXPECT_TRUE(text::icontains_ascii("Accepted at CHI", "accept"));
  EXPECT_TRUE(text::starts_with_icase("Quit", "q"));
}

TEST(Text, SplitJoinCollapse) {
  EXPECT_EQ(text::split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
  EXPECT_EQ(text::split_whitespace("  a \t b\n"), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(text::join({"x", "y", "z"}, "-"), "x-y-z");
  EXPECT_EQ(text::collapse_whitespace(" Monte  Carlo\n tree "), "Monte Carlo tree");
}

TEST(Text, StripPunctuationHandlesUnicodeQuotes) {
  EXPECT_EQ(text::strip_punctuation("“CodeContests”"), "CodeContests");
  EXPECT_EQ(text::strip_punctuation("(state-of-the-art)."), "state-of-the-art");
  EXPECT_EQ(text::strip_punctuation("—"), "");
  EXPECT_EQ(text::strip_punctuation("café"), "café");
}

TEST(Text, CodePointOffsets) {
  const std::string s = "aé中";
  EXPECT_EQ(text::code_point_offsets(s), (std::vector<std::size_t>{0, 1, 3, 6}));
  EXPECT_EQ(text::code_point_offsets(""), (std::vector<std::size_t>{0}));
}

TEST(Csv, EscapesOnlyWhenNeeded) {
  EXPECT_EQ(csv::escape("plain"), "plain");
  EXPECT_EQ(csv::escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  csv::Table t({"k", "v"});
  t.add_row({"x", csv::number(0.5)});
  t.add_row({"y", csv::number(std::optional<double>{})});
  EXPECT_EQ(t.str(), "k,v\nx,0.5000\ny,\n");
}

TEST(JsonIo, JsonlRoundTripAndAppend) {
  TempDir dir;
  const auto path = dir / "sub" / "rows.jsonl";
  write_jsonl(path, {json{{"a", 1}}, json{{"a", 2}}});
  append_jsonl(path, json{{"a", 3}});
  const auto rows = read_jsonl(path);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2]["a"], 3);
}

TEST(JsonIo, MissingJsonlReadsEmpty) {
  TempDir dir;
  EXPECT_TRUE(read_jsonl(dir / "absent.jsonl").empty());
}

TEST(JsonIo, BadJsonlLineIsParseError) {
  try {
    parse_jsonl("{\"a\":1}\n{oops\n", "mem");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("mem"), std::string::npos);
    EXPECT_EQ(e.raw(), "{oops");
  }
}

TEST(JsonIo, OptionalFieldTreatsNullAsAbsent) {
  const json j = {{"x", nullptr}, {"y", "v"}};
  EXPECT_FALSE(optional_field<std::string>(j, "x"));
  EXPECT_FALSE(optional_field<std::string>(j, "z"));
  EXPECT_EQ(optional_field<std::string>(j, "y"), "v");
}

TEST(Http, SplitUrl) {
  const auto p = http::split_url("http://127.0.0.1:8080/v1/chat");
  EXPECT_EQ(p.origin, "http://127.0.0.1:8080");
  EXPECT_EQ(p.path, "/v1/chat");
  EXPECT_EQ(http::split_url("https://example.org").path, "/");
  EXPECT_THROW(http::split_url("ftp://x"), PreconditionError);
}

TEST(Http, RetryAfterAndTransientStatus) {
  EXPECT_EQ(http::parse_retry_after("2"), 2.0);
  EXPECT_EQ(http::parse_retry_after("0.5"), 0.5);
  EXPECT_FALSE(http::parse_retry_after(""));
  EXPECT_FALSE(http::parse_retry_after("Wed, 21 Oct 2015 07:28:00 GMT"));
  EXPECT_TRUE(http::is_transient_status(429));
  EXPECT_TRUE(http::is_transient_status(503));
  EXPECT_FALSE(http::is_transient_status(400));
}

}  // namespace
}  // namespace dejargon
