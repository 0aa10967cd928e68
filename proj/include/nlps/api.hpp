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

#include <string>

#include <nlohmann/json.hpp>

#include "nlps/aggregate.hpp"
#include "nlps/query.hpp"
#include "nlps/store.hpp"

// Response documents shared by the CLI and the HTTP service, so both emit the
// same bytes for the same snapshot and spec.
namespace nlps::api {

/// Filter, aggregate, and echo the canonical spec alongside the bundle.
inline nlohmann::json answer_query(const Snapshot& snapshot, const FilterSpec& spec, const AggregateOptions& opt) {
  const auto ids = select_papers(snapshot, spec);
  nlohmann::json body = aggregate(snapshot, ids, opt);
  body["spec"] = spec;
  return body;
}

inline std::string render(const nlohmann::json& body) { return body.dump() + "\n"; }

struct HoverInfo {
  std::string title;
  std::string authors;
  int year = 0;
  std::string venue;
  std::optional<std::int64_t> n_citations;
};

inline HoverInfo hover_info(const PaperRecord& p) {
  return {p.title, format_authors(p.authors), p.year, p.venue, p.n_citations};
}

inline void to_json(nlohmann::json& j, const HoverInfo& h) {
  j = nlohmann::json{{"title", h.title},
                     {"authors", h.authors},
                     {"year", h.year},
                     {"venue", h.venue},
                     {"n_citations", h.n_citations ? nlohmann::json(*h.n_citations) : nlohmann::json("unaligned")}};
}

}  // namespace nlps::api
