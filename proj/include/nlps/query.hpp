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

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlps/errors.hpp"
#include "nlps/records.hpp"
#include "nlps/store.hpp"
#include "nlps/text.hpp"

namespace nlps {

struct AuthorQuery {
  std::string last;
  std::optional<std::string> first;
  bool operator==(const AuthorQuery&) const = default;
};

/// The user's current selection. Absent facets do not constrain; present
/// facets are combined with AND; title_terms match with OR.
struct FilterSpec {
  std::optional<std::pair<int, int>> year_range;
  std::optional<std::set<int>> years_clicked;
  std::optional<std::set<std::string>> venues;
  std::optional<std::set<PaperType>> paper_types;
  std::optional<AuthorQuery> author_query;
  std::optional<std::set<std::string>> title_terms;
  std::optional<std::string> title_bigram;
  std::optional<std::string> language;
  std::set<std::string> excluded_ids;

  bool operator==(const FilterSpec&) const = default;
};

inline bool terms_match(const std::set<std::string>& title_unigrams, const std::set<std::string>& terms) {
  auto a = title_unigrams.begin();
  auto b = terms.begin();
  while (a != title_unigrams.end() && b != terms.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      return true;
    }
  }
  return false;
}

inline bool author_match(const PaperRecord& paper, const AuthorQuery& query) {
  const auto last = text::to_lower(query.last);
  const auto first = query.first ? std::optional(text::to_lower(*query.first)) : std::nullopt;
  return std::any_of(paper.authors.begin(), paper.authors.end(), [&](const AuthorName& a) {
    return text::to_lower(a.last) == last && (!first || text::to_lower(a.first) == *first);
  });
}

namespace detail {

using Ids = std::vector<std::uint32_t>;

inline Ids unite(const Ids& a, const Ids& b) {
  Ids out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Ids intersect(const Ids& a, const Ids* b) {
  Ids out;
  if (b == nullptr) return out;
  std::set_intersection(a.begin(), a.end(), b->begin(), b->end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

/// Indices (ascending, hence ascending nlps_id) of the papers the spec
/// selects. Text facets are resolved through the posting lists; the rest
/// are checked per candidate.
inline std::vector<std::size_t> select_papers(const Snapshot& snapshot, const FilterSpec& spec) {
  std::optional<detail::Ids> candidates;
  if (spec.title_terms) {
    detail::Ids acc;
    for (const auto& term : *spec.title_terms) {
      if (const auto* p = snapshot.unigram_postings(term)) acc = detail::unite(acc, *p);
    }
    candidates = std::move(acc);
  }
  auto narrow = [&](const std::vector<std::uint32_t>* postings) {
    if (!candidates) {
      candidates = postings ? *postings : detail::Ids{};
    } else {
      candidates = detail::intersect(*candidates, postings);
    }
  };
  if (spec.title_bigram) narrow(snapshot.bigram_postings(*spec.title_bigram));
  if (spec.language) narrow(snapshot.language_postings(*spec.language));

  auto keep = [&](std::size_t i) {
    const auto& p = snapshot.papers()[i];
    if (spec.year_range && (p.year < spec.year_range->first || p.year > spec.year_range->second)) return false;
    if (spec.years_clicked && !spec.years_clicked->contains(p.year)) return false;
    if (spec.venues && !spec.venues->contains(p.venue)) return false;
    if (spec.paper_types && !spec.paper_types->contains(p.paper_type)) return false;
    if (spec.author_query && !author_match(p, *spec.author_query)) return false;
    return !spec.excluded_ids.contains(p.nlps_id);
  };

  std::vector<std::size_t> out;
  if (candidates) {
    for (const auto i : *candidates) {
      if (keep(i)) out.push_back(i);
    }
  } else {
    for (std::size_t i = 0; i < snapshot.size(); ++i) {
      if (keep(i)) out.push_back(i);
    }
  }
  return out;
}

inline std::set<std::string> apply_filter(const Snapshot& snapshot, const FilterSpec& spec) {
  std::set<std::string> ids;
  for (const auto i : select_papers(snapshot, spec)) ids.insert(snapshot.papers()[i].nlps_id);
  return ids;
}

// ---------------------------------------------------------------------------
// JSON form. Field names follow the struct; absent facets are omitted and
// empty lists count as absent.

inline void to_json(nlohmann::json& j, const FilterSpec& s) {
  j = nlohmann::json::object();
  if (s.year_range) j["year_range"] = {s.year_range->first, s.year_range->second};
  if (s.years_clicked) j["years_clicked"] = *s.years_clicked;
  if (s.venues) j["venues"] = *s.venues;
  if (s.paper_types) {
    auto& arr = j["paper_types"] = nlohmann::json::array();
    for (const auto t : *s.paper_types) arr.push_back(to_string(t));
  }
  if (s.author_query) {
    j["author_query"] = {{"last", s.author_query->last}};
    if (s.author_query->first) j["author_query"]["first"] = *s.author_query->first;
  }
  if (s.title_terms) j["title_terms"] = *s.title_terms;
  if (s.title_bigram) j["title_bigram"] = *s.title_bigram;
  if (s.language) j["language"] = *s.language;
  if (!s.excluded_ids.empty()) j["excluded_ids"] = s.excluded_ids;
}

namespace detail {

inline const nlohmann::json& expect_array(const nlohmann::json& v, const std::string& field) {
  if (!v.is_array()) throw SpecError(field, "expected an array");
  return v;
}

inline std::string expect_string(const nlohmann::json& v, const std::string& field) {
  if (!v.is_string()) throw SpecError(field, "expected a string");
  return v.get<std::string>();
}

inline int expect_int(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number_integer()) throw SpecError(field, "expected an integer");
  const auto n = v.get<std::int64_t>();
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) {
    throw SpecError(field, "integer out of range");
  }
  return static_cast<int>(n);
}

// Splits free text into title tokens, so "sentiment, Emotion" and
// ["sentiment", "emotion"] mean the same thing.
inline void add_terms(std::set<std::string>& out, const std::string& raw) {
  for (auto& t : text::tokenize_title(raw)) out.insert(std::move(t));
}

}  // namespace detail

/// Parses and canonicalizes a FilterSpec document. Throws SpecError naming
/// the offending field.
inline FilterSpec filter_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SpecError("", "filter spec must be a JSON object");
  FilterSpec s;
  for (const auto& [key, v] : j.items()) {
    if (v.is_null()) continue;
    if (key == "year_range") {
      detail::expect_array(v, key);
      if (v.size() != 2) throw SpecError(key, "expected [lo, hi]");
      const int lo = detail::expect_int(v[0], key), hi = detail::expect_int(v[1], key);
      if (lo > hi) throw SpecError(key, "lo must not exceed hi");
      s.year_range = std::pair{lo, hi};
    } else if (key == "years_clicked") {
      std::set<int> years;
      for (const auto& y : detail::expect_array(v, key)) years.insert(detail::expect_int(y, key));
      if (!years.empty()) s.years_clicked = std::move(years);
    } else if (key == "venues") {
      std::set<std::string> venues;
      for (const auto& x : detail::expect_array(v, key)) {
        const auto venue = text::trim(detail::expect_string(x, key));
        if (!venue.empty()) venues.emplace(venue);
      }
      if (!venues.empty()) s.venues = std::move(venues);
    } else if (key == "paper_types") {
      std::set<PaperType> types;
      for (const auto& x : detail::expect_array(v, key)) {
        const auto name = detail::expect_string(x, key);
        const auto t = paper_type_from_string(name);
        if (!t || *t == PaperType::front_matter) throw SpecError(key, "unknown paper type '" + name + "'");
        types.insert(*t);
      }
      if (!types.empty()) s.paper_types = std::move(types);
    } else if (key == "author_query") {
      AuthorQuery q;
      if (v.is_string()) {
        const auto raw = v.get<std::string>();
        const auto comma = raw.find(',');
        q.last = std::string(text::trim(std::string_view(raw).substr(0, comma)));
        if (comma != std::string::npos) {
          const auto first = text::trim(std::string_view(raw).substr(comma + 1));
          if (!first.empty()) q.first = std::string(first);
        }
      } else if (v.is_object()) {
        for (const auto& [k, _] : v.items()) {
          if (k != "last" && k != "first") throw SpecError(key + "." + k, "unknown field");
        }
        if (!v.contains("last")) throw SpecError(key + ".last", "required");
        q.last = std::string(text::trim(detail::expect_string(v["last"], key + ".last")));
        if (v.contains("first") && !v["first"].is_null()) {
          const auto first = std::string(text::trim(detail::expect_string(v["first"], key + ".first")));
          if (!first.empty()) q.first = first;
        }
      } else {
        throw SpecError(key, "expected an object {\"last\", \"first\"}");
      }
      if (q.last.empty()) throw SpecError(key + ".last", "must not be empty");
      s.author_query = std::move(q);
    } else if (key == "title_terms") {
      std::set<std::string> terms;
      if (v.is_string()) {
        detail::add_terms(terms, v.get<std::string>());
      } else {
        for (const auto& x : detail::expect_array(v, key)) detail::add_terms(terms, detail::expect_string(x, key));
      }
      if (!terms.empty()) s.title_terms = std::move(terms);
    } else if (key == "title_bigram") {
      const auto tokens = text::tokenize_title(detail::expect_string(v, key));
      if (tokens.empty()) continue;
      if (tokens.size() != 2) throw SpecError(key, "expected exactly two words");
      s.title_bigram = tokens[0] + " " + tokens[1];
    } else if (key == "language") {
      const auto tokens = text::tokenize_title(detail::expect_string(v, key));
      if (!tokens.empty()) s.language = text::join(tokens, " ");
    } else if (key == "excluded_ids") {
      for (const auto& x : detail::expect_array(v, key)) s.excluded_ids.insert(detail::expect_string(x, key));
    } else {
      throw SpecError(key, "unknown field");
    }
  }
  return s;
}

inline FilterSpec parse_filter_spec(std::string_view body) {
  if (text::trim(body).empty()) return {};
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("", std::string("malformed JSON: ") + e.what());
  }
  return filter_spec_from_json(j);
}

}  // namespace nlps
