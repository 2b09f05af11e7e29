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

// JSON API over a workspace for the reading UI and other clients.
//
// Reads come from an in-memory snapshot of the workspace files, rebuilt when
// any of them changes on disk. Profile and judgment writes go through the
// same stores the CLI uses. The unblinding key file is never read here.

#ifndef DEJARGON_SERVER_API_HPP
#define DEJARGON_SERVER_API_HPP

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <httplib.h>

#include "dejargon/app/commands.hpp"
#include "dejargon/app/workspace.hpp"
#include "dejargon/core/error.hpp"
#include "dejargon/core/json_io.hpp"
#include "dejargon/core/text.hpp"
#include "dejargon/corpus/article.hpp"
#include "dejargon/definitions/blinding.hpp"
#include "dejargon/definitions/definitions.hpp"
#include "dejargon/evaluation/judgments.hpp"
#include "dejargon/jargon/annotation.hpp"
#include "dejargon/profiles/profile.hpp"

#ifndef DEJARGON_VERSION
#define DEJARGON_VERSION "0.0.0"
#endif

namespace dejargon::server {

struct ApiConfig {
  app::Workspace workspace;
  std::string host = "127.0.0.1";
  int port = 8080;
  /// Reader used when a request omits ?reader=.
  std::string default_reader;
  std::size_t default_page_size = 20;
  std::size_t max_page_size = 50;
  /// Value of Access-Control-Allow-Origin.
  std::string cors_origin = "*";
  /// Served at / when set (the built UI).
  std::optional<fs::path> static_dir;

  void validate() const {
    require(default_page_size >= 1 && max_page_size >= 1, "api: page sizes must be >= 1");
    require(default_page_size <= max_page_size, "api: default page size exceeds the maximum");
    require(fs::is_directory(workspace.root), fmt::format("api: store {} does not exist", workspace.root.string()));
    require(fs::is_directory(workspace.corpus_dir()),
            fmt::format("api: no corpus under {} (run `ingest` first)", workspace.root.string()));
    if (static_dir) {
      require(fs::is_directory(*static_dir), fmt::format("api: static dir {} does not exist", static_dir->string()));
    }
  }
};

/// Status code plus JSON body; handlers are plain functions of their inputs
/// so they can be exercised without sockets.
struct Reply {
  int status = 200;
  json body;
};

inline Reply error_reply(int status, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  return {status, std::move(extra)};
}

/// Everything a read needs, loaded at once.
struct Snapshot {
  corpus::CorpusStore store;
  std::map<std::pair<std::string, std::string>, jargon::JargonAnnotation> model_annotations;
  std::map<std::pair<std::string, std::string>, jargon::JargonAnnotation> human_annotations;
  std::map<std::string, definitions::Definition> definitions;
  std::vector<definitions::DefinitionPair> pairs;
  /// Articles sorted by updated_at descending, then arxiv_id.
  std::vector<const corpus::ArticleRecord*> ordered;

  static std::shared_ptr<const Snapshot> load(const app::Workspace& ws) {
    auto s = std::make_shared<Snapshot>();
    s->store = app::load_corpus(ws);
    s->model_annotations = app::annotations_by_key(jargon::load_annotations(ws.annotations_file("model")));
    s->human_annotations = app::annotations_by_key(jargon::load_annotations(ws.annotations_file("human")));
    for (auto& d : definitions::load_definitions(ws.definitions_file())) {
      s->definitions.insert_or_assign(definitions::definition_key(d.arxiv_id, d.term, d.method), std::move(d));
    }
    s->pairs = definitions::load_pairs(ws.pairs_file());
    for (const auto& [_, r] : s->store.records()) s->ordered.push_back(&r);
    std::sort(s->ordered.begin(), s->ordered.end(), [](const auto* a, const auto* b) {
      if (a->updated_at != b->updated_at) return b->updated_at < a->updated_at;
      return a->arxiv_id < b->arxiv_id;
    });
    return s;
  }
};

/// Cheap change detector: every watched file's size and mtime.
inline std::string workspace_stamp(const app::Workspace& ws) {
  std::string stamp;
  const auto add = [&stamp](const fs::path& p) {
    std::error_code ec;
    const auto size = fs::file_size(p, ec);
    if (ec) {
      stamp += p.string() + ":-;";
      return;
    }
    const auto mtime = fs::last_write_time(p, ec).time_since_epoch().count();
    stamp += fmt::format("{}:{}:{};", p.string(), size, mtime);
  };
  const fs::path articles = ws.corpus_dir() / "articles";
  std::vector<fs::path> files;
  std::error_code ec;
  if (fs::is_directory(articles, ec)) {
    for (const auto& e : fs::recursive_directory_iterator(articles)) {
      if (e.is_regular_file()) files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) add(f);
  add(ws.corpus_dir() / "manifest.json");
  add(ws.annotations_file("model"));
  add(ws.annotations_file("human"));
  add(ws.definitions_file());
  add(ws.pairs_file());
  return stamp;
}

namespace detail {

inline std::optional<std::size_t> parse_positive(const std::string& s) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || value == 0) return std::nullopt;
  return value;
}

inline std::size_t code_point_index(const std::vector<std::size_t>& offsets, std::size_t byte) {
  return static_cast<std::size_t>(std::lower_bound(offsets.begin(), offsets.end(), byte) - offsets.begin());
}

template <class Enum>
std::optional<Enum> parse_enum(const json& body, const char* field, Enum (*parse)(const std::string&),
                               const std::string& allowed, json& errors) {
  const auto it = body.find(field);
  if (it == body.end() || !it->is_string()) {
    errors[field] = fmt::format("required; one of {}", allowed);
    return std::nullopt;
  }
  try {
    return parse(it->get<std::string>());
  } catch (const Error&) {
    errors[field] = fmt::format("must be one of {}", allowed);
    return std::nullopt;
  }
}

inline void require_string(const json& body, const char* field, json& errors) {
  const auto it = body.find(field);
  if (it == body.end() || !it->is_string() || text::trim(it->get<std::string>()).empty()) {
    errors[field] = "required non-empty string";
  }
}

}  // namespace detail

class Api {
 public:
  explicit Api(ApiConfig config)
      : config_(std::move(config)),
        profiles_(config_.workspace.profiles_dir()),
        judgments_(config_.workspace.judgments_file()) {
    config_.validate();
    refresh();
  }

  const ApiConfig& config() const { return config_; }

  /// Current snapshot, reloaded first if the workspace changed on disk.
  std::shared_ptr<const Snapshot> snapshot() {
    refresh();
    std::lock_guard lock(snapshot_mutex_);
    return snapshot_;
  }

  Reply health() {
    const auto s = snapshot();
    return {200, json{{"status", "ok"}, {"version", DEJARGON_VERSION}, {"articles", s->store.records().size()}}};
  }

  Reply list_articles(const std::optional<std::string>& category, const std::optional<std::string>& q,
                      const std::optional<std::string>& page, const std::optional<std::string>& page_size) {
    const auto s = snapshot();
    if (category && !is_known_category(*s, *category)) {
      return error_reply(400, fmt::format("unknown category '{}'", *category), {{"fields", {{"category", "unknown"}}}});
    }
    std::size_t page_no = 1;
    if (page) {
      const auto p = detail::parse_positive(*page);
      if (!p) return error_reply(400, "page must be a positive integer", {{"fields", {{"page", "positive integer"}}}});
      page_no = *p;
    }
    std::size_t size = config_.default_page_size;
    if (page_size) {
      const auto p = detail::parse_positive(*page_size);
      if (!p || *p > config_.max_page_size) {
        return error_reply(400, fmt::format("page_size must be in [1, {}]", config_.max_page_size),
                           {{"fields", {{"page_size", "out of range"}}}});
      }
      size = *p;
    }
    const std::string needle = q ? std::string(text::trim(*q)) : std::string();

    std::vector<const corpus::ArticleRecord*> hits;
    for (const auto* r : s->ordered) {
      if (category && !r->in_category(*category)) continue;
      if (!needle.empty() && !text::icontains_ascii(r->title, needle) && !text::icontains_ascii(r->abstract, needle)) {
        continue;
      }
      hits.push_back(r);
    }
    json items = json::array();
    const std::size_t begin = std::min(hits.size(), (page_no - 1) * size);
    const std::size_t end = std::min(hits.size(), begin + size);
    for (std::size_t i = begin; i < end; ++i) {
      json item = corpus::metadata_json(*hits[i]);
      item["has_fulltext"] = hits[i]->fulltext.has_value();
      items.push_back(std::move(item));
    }
    return {200, json{{"page", page_no}, {"page_size", size}, {"total", hits.size()}, {"items", items}}};
  }

  Reply get_article(const std::string& id) {
    const auto s = snapshot();
    if (!s->store.contains(id)) return error_reply(404, fmt::format("no article '{}'", id));
    return {200, corpus::metadata_json(s->store.get(id))};
  }

  Reply article_jargon(const std::string& id, const std::optional<std::string>& reader_param,
                       const std::optional<std::string>& method_param, const std::optional<std::string>& source_param) {
    const auto s = snapshot();
    if (!s->store.contains(id)) return error_reply(404, fmt::format("no article '{}'", id));
    const std::string reader = reader_param.value_or(config_.default_reader);
    if (reader.empty()) return error_reply(400, "reader is required", {{"fields", {{"reader", "required"}}}});
    if (!profiles_.contains(reader)) return error_reply(404, fmt::format("no reader '{}'", reader));

    definitions::DefinitionMode method = definitions::DefinitionMode::abstract_only;
    if (method_param) {
      try {
        method = profiles::definition_mode_from_string(*method_param);
      } catch (const Error&) {
        return error_reply(400, "method must be abstract_only or rag", {{"fields", {{"method", "unknown"}}}});
      }
    }
    jargon::Source source = jargon::Source::model;
    if (source_param) {
      try {
        source = jargon::source_from_string(*source_param);
      } catch (const Error&) {
        return error_reply(400, "source must be model or human", {{"fields", {{"source", "unknown"}}}});
      }
    }

    const auto& annotations = source == jargon::Source::model ? s->model_annotations : s->human_annotations;
    const auto it = annotations.find({id, reader});
    if (it == annotations.end()) {
      return error_reply(409, fmt::format("no {} jargon for {} / {}", jargon::to_string(source), id, reader),
                         {{"hint", "run identify"},
                          {"missing", "annotation"},
                          {"command", fmt::format("dejargon identify --reader {}", reader)}});
    }
    const auto& article = s->store.get(id);
    const auto offsets = text::code_point_offsets(article.abstract);

    json terms = json::array();
    std::size_t defined = 0;
    for (const auto& g : it->second.spans) {
      json entry{{"term", g.term},
                 {"start", g.span.start},
                 {"end", g.span.end},
                 {"start_cp", detail::code_point_index(offsets, g.span.start)},
                 {"end_cp", detail::code_point_index(offsets, g.span.end)}};
      const auto d = s->definitions.find(definitions::definition_key(id, g.term, method));
      if (d == s->definitions.end()) {
        entry["definition"] = nullptr;
        entry["definition_status"] = "missing";
      } else {
        ++defined;
        entry["definition"] = d->second.text ? json(*d->second.text) : json(nullptr);
        entry["definition_status"] = definitions::to_string(d->second.status);
        entry["no_context"] = d->second.status == definitions::Status::no_context;
        entry["context_used"] = d->second.context_used;
      }
      terms.push_back(std::move(entry));
    }
    if (!it->second.spans.empty() && defined == 0) {
      return error_reply(409, fmt::format("no {} definitions for {}", profiles::to_string(method), id),
                         {{"hint", "run define"},
                          {"missing", "definitions"},
                          {"command", fmt::format("dejargon define --method {} --reader {} --source {}",
                                                  method == definitions::DefinitionMode::rag ? "rag" : "abstract",
                                                  reader, jargon::to_string(source))}});
    }
    return {200, json{{"arxiv_id", id},
                      {"reader_id", reader},
                      {"source", jargon::to_string(source)},
                      {"method", profiles::to_string(method)},
                      {"offset_unit", "utf8_byte"},
                      {"abstract", article.abstract},
                      {"terms", terms},
                      {"unmatched", it->second.unmatched}}};
  }

  Reply list_profiles() {
    json items = json::array();
    for (const auto& p : profiles_.list()) items.push_back(p);
    return {200, json{{"items", items}}};
  }

  Reply create_profile(const std::string& raw) {
    json body;
    if (auto bad = parse_body(raw, body)) return *bad;
    json errors = json::object();
    detail::require_string(body, "reader_id", errors);
    detail::require_string(body, "description", errors);
    if (body.contains("expertise_areas") && !body["expertise_areas"].is_array()) {
      errors["expertise_areas"] = "must be an array of strings";
    }
    if (body.contains("ratings") && !body["ratings"].is_object()) errors["ratings"] = "must be an object";
    if (!errors.empty()) return error_reply(400, "validation failed", {{"fields", errors}});

    profiles::ReaderProfile profile;
    try {
      profile = body.get<profiles::ReaderProfile>();
      profile.validate();
    } catch (const json::exception& e) {
      return error_reply(400, "validation failed", {{"fields", {{"profile", e.what()}}}});
    } catch (const PreconditionError& e) {
      return error_reply(400, "validation failed", {{"fields", {{"profile", e.what()}}}});
    }
    std::lock_guard lock(write_mutex_);
    try {
      profiles_.add(profile);
    } catch (const ConflictError& e) {
      return error_reply(409, e.what());
    }
    return {201, json(profile)};
  }

  Reply pending_pairs(const std::optional<std::string>& reader_param) {
    const std::string reader = reader_param.value_or(config_.default_reader);
    if (reader.empty()) return error_reply(400, "reader is required", {{"fields", {{"reader", "required"}}}});
    const auto s = snapshot();
    json items = json::array();
    for (const auto& p : s->pairs) {
      if (p.reader_id == reader && !judgments_.contains(p.pair_id, reader)) items.push_back(definitions::blinded_json(p));
    }
    return {200, json{{"reader_id", reader}, {"pending", items.size()}, {"items", items}}};
  }

  Reply submit_judgment(const std::string& raw) {
    json body;
    if (auto bad = parse_body(raw, body)) return *bad;
    json errors = json::object();
    detail::require_string(body, "pair_id", errors);
    detail::require_string(body, "reader_id", errors);
    const std::string verdicts = "correct, incorrect, not_applicable";
    const auto a = detail::parse_enum<evaluation::Verdict>(body, "accuracy_a", evaluation::verdict_from_string,
                                                           verdicts, errors);
    const auto b = detail::parse_enum<evaluation::Verdict>(body, "accuracy_b", evaluation::verdict_from_string,
                                                           verdicts, errors);
    std::optional<evaluation::Preference> preference;
    if (body.contains("preference") && !body["preference"].is_null()) {
      preference = detail::parse_enum<evaluation::Preference>(body, "preference", evaluation::preference_from_string,
                                                              "slot_a, slot_b, tie (or null)", errors);
    }
    if (body.contains("timestamp") && !body["timestamp"].is_string()) errors["timestamp"] = "must be a string";
    if (!errors.empty()) return error_reply(400, "validation failed", {{"fields", errors}});

    evaluation::JudgmentRecord record{body["pair_id"].get<std::string>(),
                                      body["reader_id"].get<std::string>(),
                                      *a,
                                      *b,
                                      preference,
                                      body.value("timestamp", evaluation::utc_timestamp())};
    const auto s = snapshot();
    const auto pair = std::find_if(s->pairs.begin(), s->pairs.end(),
                                   [&](const definitions::DefinitionPair& p) { return p.pair_id == record.pair_id; });
    if (pair == s->pairs.end()) {
      return error_reply(400, "validation failed", {{"fields", {{"pair_id", "unknown pair"}}}});
    }
    try {
      evaluation::validate_against(record, *pair);
    } catch (const PreconditionError& e) {
      return error_reply(400, "validation failed", {{"fields", {{"judgment", e.what()}}}});
    }
    std::lock_guard lock(write_mutex_);
    try {
      judgments_.append(record);
    } catch (const ConflictError& e) {
      return error_reply(409, e.what());
    }
    return {201, json(record)};
  }

  /// Registers every route (and CORS handling) on `server`.
  void install(httplib::Server& server) {
    const auto param = [](const httplib::Request& req, const char* name) -> std::optional<std::string> {
      if (!req.has_param(name)) return std::nullopt;
      return req.get_param_value(name);
    };
    const auto send = [](httplib::Response& res, const Reply& reply) {
      res.status = reply.status;
      res.set_content(reply.body.dump(), "application/json");
    };
    const auto guarded = [send](auto handler) {
      return [send, handler](const httplib::Request& req, httplib::Response& res) {
        try {
          send(res, handler(req));
        } catch (const NotFoundError& e) {
          send(res, error_reply(404, e.what()));
        } catch (const std::exception& e) {
          send(res, error_reply(500, e.what()));
        }
      };
    };

    server.set_default_headers({{"Access-Control-Allow-Origin", config_.cors_origin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/health", guarded([this](const httplib::Request&) { return health(); }));
    server.Get("/articles", guarded([this, param](const httplib::Request& req) {
                 return list_articles(param(req, "category"), param(req, "q"), param(req, "page"),
                                      param(req, "page_size"));
               }));
    server.Get(R"(/articles/([^/]+(?:/[^/]+)?)/jargon)", guarded([this, param](const httplib::Request& req) {
                 return article_jargon(req.matches[1], param(req, "reader"), param(req, "method"),
                                       param(req, "source"));
               }));
    server.Get(R"(/articles/(.+))",
               guarded([this](const httplib::Request& req) { return get_article(req.matches[1]); }));
    server.Get("/profiles", guarded([this](const httplib::Request&) { return list_profiles(); }));
    server.Post("/profiles", guarded([this](const httplib::Request& req) { return create_profile(req.body); }));
    server.Get("/pairs", guarded([this, param](const httplib::Request& req) { return pending_pairs(param(req, "reader")); }));
    server.Post("/judgments", guarded([this](const httplib::Request& req) { return submit_judgment(req.body); }));

    if (config_.static_dir) server.set_mount_point("/", config_.static_dir->string());
  }

 private:
  static bool is_known_category(const Snapshot& s, const std::string& code) {
    const auto& cs = corpus::cs_categories();
    if (std::find(cs.begin(), cs.end(), code) != cs.end()) return true;
    for (const auto& [_, r] : s.store.records()) {
      if (r.in_category(code)) return true;
    }
    return false;
  }

  static std::optional<Reply> parse_body(const std::string& raw, json& body) {
    try {
      body = json::parse(raw);
    } catch (const json::parse_error& e) {
      return error_reply(400, fmt::format("body is not JSON: {}", e.what()));
    }
    if (!body.is_object()) return error_reply(400, "body must be a JSON object");
    return std::nullopt;
  }

  void refresh() {
    std::lock_guard reload(reload_mutex_);
    std::string stamp = workspace_stamp(config_.workspace);
    if (snapshot_ && stamp == stamp_) return;
    auto fresh = Snapshot::load(config_.workspace);
    std::lock_guard lock(snapshot_mutex_);
    snapshot_ = std::move(fresh);
    stamp_ = std::move(stamp);
  }

  ApiConfig config_;
  profiles::ProfileStore profiles_;
  evaluation::JudgmentLog judgments_;
  std::mutex reload_mutex_;
  std::mutex snapshot_mutex_;
  std::mutex write_mutex_;
  std::shared_ptr<const Snapshot> snapshot_;
  std::string stamp_;
};

/// Blocks serving `api` until `server.stop()` is called from elsewhere.
inline bool serve(Api& api, httplib::Server& server) {
  api.install(server);
  return server.listen(api.config().host, api.config().port);
}

}  // namespace dejargon::server

#endif  // DEJARGON_SERVER_API_HPP
