// Copyright 2026 The nlps Authors
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

#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "nlps/api.hpp"
#include "nlps/pipeline.hpp"

namespace nlps {

/// Holds the published value. Readers copy the shared_ptr under a short
/// lock and keep using it after a newer value is published.
template <typename T>
class SnapshotSlot {
 public:
  std::shared_ptr<const T> get() const {
    std::lock_guard lock(mu_);
    return current_;
  }

  void publish(std::shared_ptr<const T> next) {
    std::shared_ptr<const T> old;
    {
      std::lock_guard lock(mu_);
      old = std::exchange(current_, std::move(next));
    }
    // old is released here, outside the lock
  }

 private:
  mutable std::mutex mu_;
  std::shared_ptr<const T> current_;
};

struct ServiceConfig {
  AggregateOptions aggregate;
  LanguageLexicon lexicon = LanguageLexicon::defaults();
  // Runs after a reload has built its snapshot and before it is published.
  std::function<void()> before_publish;
  std::optional<std::filesystem::path> static_dir;
};

struct HttpReply {
  int status = 200;
  std::string body;
};

/// The JSON API. Handlers are plain methods so they can be exercised without
/// a socket; mount() wires them into an httplib server.
class Service {
 public:
  explicit Service(ServiceConfig config = {}) : config_(std::move(config)) {}

  void publish(std::shared_ptr<const Snapshot> snapshot) { slot_.publish(std::move(snapshot)); }
  std::shared_ptr<const Snapshot> current() const { return slot_.get(); }
  const ServiceConfig& config() const noexcept { return config_; }

  HttpReply health() const {
    const auto snap = slot_.get();
    nlohmann::json body{{"status", "ok"},
                        {"snapshot_build", snap ? nlohmann::json(snap->built_at()) : nlohmann::json(nullptr)}};
    return {200, api::render(body)};
  }

  HttpReply summary(std::string_view treemap_param = {}) const {
    const auto snap = slot_.get();
    if (!snap) return no_snapshot();
    const auto facet = parse_facet(treemap_param);
    if (!facet) return bad_facet(treemap_param);
    const auto slot = static_cast<std::size_t>(*facet);
    {
      std::lock_guard lock(cache_mu_);
      if (cache_.snapshot == snap && cache_.bodies[slot]) return {200, *cache_.bodies[slot]};
    }
    auto body = answer(*snap, FilterSpec{}, *facet);
    std::lock_guard lock(cache_mu_);
    if (cache_.snapshot != snap) cache_ = {snap, {}};
    cache_.bodies[slot] = body;
    return {200, std::move(body)};
  }

  HttpReply query(std::string_view body, std::string_view treemap_param = {}) const {
    const auto snap = slot_.get();
    if (!snap) return no_snapshot();
    const auto facet = parse_facet(treemap_param);
    if (!facet) return bad_facet(treemap_param);
    FilterSpec spec;
    try {
      spec = parse_filter_spec(body);
    } catch (const SpecError& e) {
      return error(400, e.what(), e.field());
    }
    return {200, answer(*snap, spec, *facet)};
  }

  HttpReply paper(std::string_view nlps_id) const {
    const auto snap = slot_.get();
    if (!snap) return no_snapshot();
    const auto* p = snap->find(nlps_id);
    if (p == nullptr) return error(404, "unknown paper '" + std::string(nlps_id) + "'");
    return {200, api::render(nlohmann::json(api::hover_info(*p)))};
  }

  /// Builds a new snapshot from a data directory and swaps it in. Requests
  /// already holding the old snapshot finish against it.
  HttpReply reload(std::string_view body) {
    std::string dir;
    try {
      dir = reload_path(body);
    } catch (const SpecError& e) {
      return error(400, e.what(), e.field());
    }
    std::lock_guard lock(reload_mu_);
    BuildOutcome outcome;
    try {
      if (!std::filesystem::is_directory(dir)) throw IoError("not a directory: " + dir);
      outcome = build_from_files(input_paths(dir), config_.lexicon);
    } catch (const Error& e) {
      return error(422, e.what());
    }
    if (config_.before_publish) config_.before_publish();
    nlohmann::json report = outcome;
    report["snapshot_build"] = outcome.snapshot->built_at();
    slot_.publish(std::move(outcome.snapshot));
    return {200, api::render(report)};
  }

  void mount(httplib::Server& server) {
    auto send = [](httplib::Response& res, const HttpReply& r) {
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    auto facet_of = [](const httplib::Request& req) {
      return req.has_param("treemap") ? req.get_param_value("treemap") : std::string();
    };
    server.Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
    server.Get("/api/summary", [this, send, facet_of](const httplib::Request& req, httplib::Response& res) {
      send(res, summary(facet_of(req)));
    });
    server.Post("/api/query", [this, send, facet_of](const httplib::Request& req, httplib::Response& res) {
      send(res, query(req.body, facet_of(req)));
    });
    server.Get(R"(/api/paper/(.+))", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, paper(req.matches[1].str()));
    });
    server.Post("/api/reload",
                [this, send](const httplib::Request& req, httplib::Response& res) { send(res, reload(req.body)); });
    if (config_.static_dir) server.set_mount_point("/", config_.static_dir->string());
    // Exclusive bind: an occupied port makes bind fail.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
  }

 private:
  struct SummaryCache {
    std::shared_ptr<const Snapshot> snapshot;
    std::array<std::optional<std::string>, 4> bodies;
  };

  static std::optional<TreemapFacet> parse_facet(std::string_view param) {
    if (param.empty()) return TreemapFacet::venue_type;
    return treemap_facet_from_string(param);
  }

  static std::string reload_path(std::string_view body) {
    const auto trimmed = text::trim(body);
    if (trimmed.empty()) throw SpecError("path", "data directory required");
    if (trimmed.front() != '{' && trimmed.front() != '"') return std::string(trimmed);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(trimmed);
    } catch (const nlohmann::json::parse_error&) {
      throw SpecError("", "malformed JSON");
    }
    if (j.is_string()) return j.get<std::string>();
    if (!j.is_object() || !j.contains("path") || !j["path"].is_string()) {
      throw SpecError("path", "expected {\"path\": \"<data directory>\"}");
    }
    return j["path"].get<std::string>();
  }

  std::string answer(const Snapshot& snap, const FilterSpec& spec, TreemapFacet facet) const {
    auto opt = config_.aggregate;
    opt.treemap_facet = facet;
    return api::render(api::answer_query(snap, spec, opt));
  }

  static HttpReply error(int status, const std::string& message, const std::string& field = {}) {
    nlohmann::json body{{"error", message}};
    if (!field.empty()) body["field"] = field;
    return {status, api::render(body)};
  }

  static HttpReply no_snapshot() { return error(503, "no snapshot loaded"); }
  static HttpReply bad_facet(std::string_view f) { return error(400, "unknown treemap facet '" + std::string(f) + "'", "treemap"); }

  ServiceConfig config_;
  SnapshotSlot<Snapshot> slot_;
  std::mutex reload_mu_;
  mutable std::mutex cache_mu_;
  mutable SummaryCache cache_;
};

}  // namespace nlps
