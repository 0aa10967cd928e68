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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlps/errors.hpp"
#include "nlps/ingest.hpp"
#include "nlps/lexicons.hpp"
#include "nlps/records.hpp"
#include "nlps/store.hpp"

namespace nlps {

enum class TreemapFacet { venue_type, unigram, bigram, language };

inline std::string_view to_string(TreemapFacet f) {
  switch (f) {
    case TreemapFacet::venue_type: return "venue-type";
    case TreemapFacet::unigram: return "unigram";
    case TreemapFacet::bigram: return "bigram";
    case TreemapFacet::language: return "language";
  }
  return "venue-type";
}

inline std::optional<TreemapFacet> treemap_facet_from_string(std::string_view s) {
  for (const auto f : {TreemapFacet::venue_type, TreemapFacet::unigram, TreemapFacet::bigram, TreemapFacet::language}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

struct Segment {
  std::string nlps_id;
  std::int64_t n_citations = 0;
  std::size_t color_index = 0;
  bool operator==(const Segment&) const = default;
};

struct YearSegments {
  int year = 0;
  std::vector<Segment> segments;
  std::int64_t year_total = 0;
  bool operator==(const YearSegments&) const = default;
};

struct TopPaper {
  std::string nlps_id;
  std::string title;
  int year = 0;
  std::string venue;
  std::optional<std::int64_t> n_citations;
  bool operator==(const TopPaper&) const = default;
};

struct TopAuthor {
  std::string name;
  std::int64_t citations = 0;
  std::size_t papers = 0;
  bool operator==(const TopAuthor&) const = default;
};

struct TreemapEntry {
  std::string label;
  std::size_t paper_count = 0;
  TreemapFacet facet = TreemapFacet::venue_type;
  // Set for venue-type entries so a click can restore both facets.
  std::string venue;
  std::optional<PaperType> paper_type;
  bool operator==(const TreemapEntry&) const = default;
};

struct AggregateBundle {
  std::size_t papers_total = 0;
  std::map<int, std::size_t> papers_by_year;
  std::int64_t citations_total = 0;
  std::vector<YearSegments> citations_by_year;
  std::vector<TopPaper> top_papers;
  std::vector<TopAuthor> top_authors;
  TreemapFacet treemap_facet = TreemapFacet::venue_type;
  std::vector<TreemapEntry> treemap;
  bool operator==(const AggregateBundle&) const = default;
};

struct AggregateOptions {
  std::size_t palette_size = 20;
  std::size_t top_papers = 30;
  std::size_t top_authors = 30;
  std::size_t treemap_top = 40;
  TreemapFacet treemap_facet = TreemapFacet::venue_type;
  std::set<std::string> stopwords{std::begin(lexicons::kStopwords), std::end(lexicons::kStopwords)};
};

using PaperIds = std::span<const std::size_t>;

/// Stable content hash of the id, reduced to the palette. Reproducible across
/// runs and platforms.
inline std::size_t color_for_paper(std::string_view nlps_id, std::size_t palette_size) {
  if (palette_size == 0) throw ValidationError("palette_size must be at least 1");
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (const unsigned char c : nlps_id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // splitmix64 finalizer spreads the low bits.
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return static_cast<std::size_t>(h % palette_size);
}

inline std::map<int, std::size_t> papers_by_year(const Snapshot& snapshot, PaperIds ids) {
  std::map<int, std::size_t> out;
  for (const auto i : ids) ++out[snapshot.papers()[i].year];
  return out;
}

/// One entry per year that has any selected paper. Aligned papers become
/// segments, largest first (ties by id); unaligned ones add nothing.
inline std::vector<YearSegments> citations_by_year_segments(const Snapshot& snapshot, PaperIds ids,
                                                            std::size_t palette_size = 20) {
  std::map<int, YearSegments> years;
  for (const auto i : ids) {
    const auto& p = snapshot.papers()[i];
    auto& y = years[p.year];
    y.year = p.year;
    if (!p.n_citations) continue;
    y.segments.push_back({p.nlps_id, *p.n_citations, color_for_paper(p.nlps_id, palette_size)});
    y.year_total += *p.n_citations;
  }
  std::vector<YearSegments> out;
  out.reserve(years.size());
  for (auto& [year, y] : years) {
    std::sort(y.segments.begin(), y.segments.end(), [](const Segment& a, const Segment& b) {
      if (a.n_citations != b.n_citations) return a.n_citations > b.n_citations;
      return a.nlps_id < b.nlps_id;
    });
    out.push_back(std::move(y));
  }
  return out;
}

/// Most cited first; ties by year (newest first), then id.
inline std::vector<TopPaper> top_papers(const Snapshot& snapshot, PaperIds ids, std::size_t k) {
  if (k == 0) throw ValidationError("k must be at least 1");
  std::vector<const PaperRecord*> rows;
  rows.reserve(ids.size());
  for (const auto i : ids) rows.push_back(&snapshot.papers()[i]);
  const auto n = std::min(k, rows.size());
  std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n), rows.end(),
                    [](const PaperRecord* a, const PaperRecord* b) {
                      const auto ca = a->n_citations.value_or(0), cb = b->n_citations.value_or(0);
                      if (ca != cb) return ca > cb;
                      if (a->year != b->year) return a->year > b->year;
                      return a->nlps_id < b->nlps_id;
                    });
  std::vector<TopPaper> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = *rows[i];
    out.push_back({p.nlps_id, p.title, p.year, p.venue, p.n_citations});
  }
  return out;
}

/// Every coauthor is credited with the paper's full citation count.
inline std::vector<TopAuthor> top_authors(const Snapshot& snapshot, PaperIds ids, std::size_t k) {
  if (k == 0) throw ValidationError("k must be at least 1");
  std::unordered_map<std::string, TopAuthor> acc;
  for (const auto i : ids) {
    const auto& p = snapshot.papers()[i];
    std::set<std::string> seen;
    for (const auto& a : p.authors) {
      auto name = display_name(a.first, a.last);
      if (!seen.insert(name).second) continue;
      auto& entry = acc[name];
      entry.name = std::move(name);
      entry.citations += p.n_citations.value_or(0);
      ++entry.papers;
    }
  }
  std::vector<TopAuthor> out;
  out.reserve(acc.size());
  for (auto& [_, a] : acc) out.push_back(std::move(a));
  const auto n = std::min(k, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n), out.end(),
                    [](const TopAuthor& a, const TopAuthor& b) {
                      if (a.citations != b.citations) return a.citations > b.citations;
                      return a.name < b.name;
                    });
  out.resize(n);
  return out;
}

inline std::string venue_type_label(std::string_view venue, PaperType type) {
  return std::string(venue.empty() ? "(unknown venue)" : venue) + " / " + std::string(to_string(type));
}

/// Distinct-paper counts per label for one facet, highest first, ties by
/// label. Unigram and bigram labels made only of stopwords are dropped.
inline std::vector<TreemapEntry> treemap(const Snapshot& snapshot, PaperIds ids, TreemapFacet facet, std::size_t top_n,
                                         const std::set<std::string>& stopwords) {
  if (top_n == 0) throw ValidationError("top_n must be at least 1");
  std::map<std::string, TreemapEntry> acc;
  auto bump = [&](const std::string& label) -> TreemapEntry& {
    auto& e = acc[label];
    if (e.paper_count == 0) {
      e.label = label;
      e.facet = facet;
    }
    ++e.paper_count;
    return e;
  };
  auto all_stopwords = [&](std::string_view label) {
    for (const auto tok : text::split(label, ' ')) {
      if (!stopwords.contains(std::string(tok))) return false;
    }
    return true;
  };
  for (const auto i : ids) {
    const auto& p = snapshot.papers()[i];
    switch (facet) {
      case TreemapFacet::venue_type: {
        auto& e = bump(venue_type_label(p.venue, p.paper_type));
        e.venue = p.venue;
        e.paper_type = p.paper_type;
        break;
      }
      case TreemapFacet::unigram:
        for (const auto& r : snapshot.unigrams_of(i)) {
          if (!all_stopwords(r.unigram)) bump(r.unigram);
        }
        break;
      case TreemapFacet::bigram:
        for (const auto& r : snapshot.bigrams_of(i)) {
          if (!all_stopwords(r.bigram)) bump(r.bigram);
        }
        break;
      case TreemapFacet::language:
        for (const auto& r : snapshot.languages_of(i)) bump(r.language);
        break;
    }
  }
  std::vector<TreemapEntry> out;
  out.reserve(acc.size());
  for (auto& [_, e] : acc) out.push_back(std::move(e));
  // acc is label-ordered, so a stable sort on count keeps the label tie-break.
  std::stable_sort(out.begin(), out.end(),
                   [](const TreemapEntry& a, const TreemapEntry& b) { return a.paper_count > b.paper_count; });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

inline AggregateBundle aggregate(const Snapshot& snapshot, PaperIds ids, const AggregateOptions& opt = {}) {
  AggregateBundle b;
  b.papers_total = ids.size();
  b.papers_by_year = papers_by_year(snapshot, ids);
  b.citations_by_year = citations_by_year_segments(snapshot, ids, opt.palette_size);
  for (const auto& y : b.citations_by_year) b.citations_total += y.year_total;
  b.top_papers = top_papers(snapshot, ids, opt.top_papers);
  b.top_authors = top_authors(snapshot, ids, opt.top_authors);
  b.treemap_facet = opt.treemap_facet;
  b.treemap = treemap(snapshot, ids, opt.treemap_facet, opt.treemap_top, opt.stopwords);
  return b;
}

inline void to_json(nlohmann::json& j, const AggregateBundle& b) {
  auto by_year = nlohmann::json::object();
  for (const auto& [year, n] : b.papers_by_year) by_year[std::to_string(year)] = n;

  auto segments = nlohmann::json::array();
  for (const auto& y : b.citations_by_year) {
    auto segs = nlohmann::json::array();
    for (const auto& s : y.segments) {
      segs.push_back({{"nlps_id", s.nlps_id}, {"n_citations", s.n_citations}, {"color_index", s.color_index}});
    }
    segments.push_back({{"year", y.year}, {"year_total", y.year_total}, {"segments", std::move(segs)}});
  }

  auto papers = nlohmann::json::array();
  for (const auto& p : b.top_papers) {
    papers.push_back({{"nlps_id", p.nlps_id},
                      {"title", p.title},
                      {"year", p.year},
                      {"venue", p.venue},
                      {"n_citations", p.n_citations ? nlohmann::json(*p.n_citations) : nlohmann::json(nullptr)}});
  }

  auto authors = nlohmann::json::array();
  for (const auto& a : b.top_authors) {
    authors.push_back({{"name", a.name}, {"citations", a.citations}, {"papers", a.papers}});
  }

  auto cells = nlohmann::json::array();
  for (const auto& e : b.treemap) {
    nlohmann::json cell{{"label", e.label}, {"paper_count", e.paper_count}, {"facet", to_string(e.facet)}};
    if (e.paper_type) {
      cell["venue"] = e.venue;
      cell["paper_type"] = to_string(*e.paper_type);
    }
    cells.push_back(std::move(cell));
  }

  j = nlohmann::json{{"papers_total", b.papers_total},
                     {"papers_by_year", std::move(by_year)},
                     {"citations_total", b.citations_total},
                     {"citations_by_year", std::move(segments)},
                     {"top_papers", std::move(papers)},
                     {"top_authors", std::move(authors)},
                     {"treemap_facet", to_string(b.treemap_facet)},
                     {"treemap", std::move(cells)}};
}

}  // namespace nlps
