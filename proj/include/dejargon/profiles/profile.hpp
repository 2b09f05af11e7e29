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

#ifndef DEJARGON_PROFILES_PROFILE_HPP
#define DEJARGON_PROFILES_PROFILE_HPP

#include <algorithm>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "dejargon/core/error.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/core/text.hpp"

namespace dejargon::profiles {

/// A reader's self-described background. `description` drives
/// personalization; `ratings` (topic -> 1..5) are optional.
struct ReaderProfile {
  std::string reader_id;
  std::string description;
  std::vector<std::string> expertise_areas;
  std::map<std::string, int> ratings;

  bool operator==(const ReaderProfile&) const = default;

  void validate() const {
    static const std::regex kId(R"(^[A-Za-z0-9_.-]+$)");
    require(std::regex_match(reader_id, kId),
            fmt::format("profile: reader_id '{}' must match [A-Za-z0-9_.-]+", reader_id));
    require(!text::trim(description).empty(), fmt::format("profile {}: empty description", reader_id));
    for (const auto& [topic, rating] : ratings) {
      require(rating >= 1 && rating <= 5,
              fmt::format("profile {}: rating for '{}' is {}, expected 1..5", reader_id, topic, rating));
    }
  }
};

inline void to_json(json& j, const ReaderProfile& p) {
  j = json{{"reader_id", p.reader_id},
           {"description", p.description},
           {"expertise_areas", p.expertise_areas},
           {"ratings", p.ratings}};
}

inline void from_json(const json& j, ReaderProfile& p) {
  p.reader_id = j.at("reader_id").get<std::string>();
  p.description = j.at("description").get<std::string>();
  p.expertise_areas = j.value("expertise_areas", std::vector<std::string>{});
  p.ratings = j.value("ratings", std::map<std::string, int>{});
}

/// One JSON document per reader: <dir>/<reader_id>.json.
class ProfileStore {
 public:
  explicit ProfileStore(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const { return dir_; }

  bool contains(const std::string& reader_id) const { return fs::exists(path_for(reader_id)); }

  /// Throws ConflictError if the reader already exists and `replace` is false.
  void add(const ReaderProfile& profile, bool replace = false) const {
    profile.validate();
    if (!replace && contains(profile.reader_id)) {
      throw ConflictError(fmt::format("profile '{}' already exists", profile.reader_id));
    }
    write_json_file(path_for(profile.reader_id), json(profile));
  }

  ReaderProfile get(const std::string& reader_id) const {
    const fs::path path = path_for(reader_id);
    if (!fs::exists(path)) throw NotFoundError(fmt::format("no profile '{}'", reader_id));
    auto profile = read_json_file(path).get<ReaderProfile>();
    profile.validate();
    return profile;
  }

  /// Sorted by reader_id.
  std::vector<ReaderProfile> list() const {
    std::vector<ReaderProfile> out;
    if (!fs::exists(dir_)) return out;
    for (const auto& entry : fs::directory_iterator(dir_)) {
      if (entry.path().extension() == ".json") out.push_back(read_json_file(entry.path()).get<ReaderProfile>());
    }
    std::sort(out.begin(), out.end(),
              [](const ReaderProfile& a, const ReaderProfile& b) { return a.reader_id < b.reader_id; });
    return out;
  }

 private:
  fs::path path_for(const std::string& reader_id) const {
    static const std::regex kId(R"(^[A-Za-z0-9_.-]+$)");
    if (!std::regex_match(reader_id, kId) || reader_id == "." || reader_id == "..") {
      throw NotFoundError(fmt::format("no profile '{}'", reader_id));
    }
    return dir_ / (reader_id + ".json");
  }

  fs::path dir_;
};

}  // namespace dejargon::profiles

#endif  // DEJARGON_PROFILES_PROFILE_HPP
