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
#include <array>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nlps/errors.hpp"
#include "nlps/records.hpp"
#include "nlps/text.hpp"
#include "nlps/tsv.hpp"

namespace nlps {

using text::normalize_title;

/// The paper id shared by both sources:
/// normalized title | year | normalized first-author last name.
inline std::string build_alignment_key(std::string_view title, int year, std::string_view first_author_last) {
  auto t = normalize_title(title);
  if (t.empty()) throw ValidationError("title is empty after normalization");
  auto last = normalize_title(first_author_last);
  if (last.empty()) throw ValidationError("first author last name is empty after normalization");
  return t + "|" + std::to_string(year) + "|" + last;
}

struct CitationParseResult {
  std::vector<CitationRecord> records;
  std::size_t total_read = 0;
  std::vector<ParseError> parse_errors;
};

inline constexpr std::array<std::string_view, 4> kCitationColumns{"title", "year", "first_author_last",
                                                                  "n_citations"};

/// Reads citations.tsv. Malformed rows are reported, not returned.
inline CitationParseResult parse_citations(std::istream& in) {
  tsv::Reader reader(in, kCitationColumns);
  const auto c_title = *reader.column("title");
  const auto c_year = *reader.column("year");
  const auto c_last = *reader.column("first_author_last");
  const auto c_count = *reader.column("n_citations");

  CitationParseResult result;
  while (reader.next()) {
    ++result.total_read;
    auto fail = [&](std::string msg) { result.parse_errors.push_back({reader.line_number(), std::move(msg)}); };
    if (reader.fields().size() != reader.width()) {
      fail("expected " + std::to_string(reader.width()) + " fields, got " + std::to_string(reader.fields().size()));
      continue;
    }
    CitationRecord rec;
    rec.title = std::string(text::trim(reader.field(c_title)));
    rec.first_author_last = std::string(text::trim(reader.field(c_last)));
    const auto year = tsv::parse_int<int>(reader.field(c_year));
    const auto count = tsv::parse_int<std::int64_t>(reader.field(c_count));
    if (rec.title.empty()) {
      fail("empty title");
      continue;
    }
    if (!year) {
      fail("invalid year '" + std::string(reader.field(c_year)) + "'");
      continue;
    }
    if (!count || *count < 0) {
      fail("invalid n_citations '" + std::string(reader.field(c_count)) + "'");
      continue;
    }
    rec.year = *year;
    rec.n_citations = *count;
    try {
      (void)build_alignment_key(rec.title, rec.year, rec.first_author_last);
    } catch (const ValidationError& e) {
      fail(e.what());
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

struct AlignResult {
  std::vector<PaperRecord> papers;
  AlignmentStats stats;
};

/// Attaches citation counts to anthology papers whose key matches exactly one
/// citation record. A key that occurs more than once on either side is a
/// collision: it is counted once and none of its papers are aligned.
/// Paper order is preserved; the result does not depend on input order.
inline AlignResult align(std::vector<PaperRecord> papers, std::span<const CitationRecord> citations) {
  struct Group {
    std::size_t papers = 0;
    std::size_t citations = 0;
    std::int64_t n_citations = 0;
  };
  std::unordered_map<std::string, Group> groups;
  groups.reserve(papers.size());
  for (const auto& p : papers) ++groups[p.nlps_id].papers;

  for (const auto& c : citations) {
    std::string key;
    try {
      key = build_alignment_key(c.title, c.year, c.first_author_last);
    } catch (const ValidationError&) {
      continue;
    }
    const auto it = groups.find(key);
    if (it == groups.end()) continue;
    ++it->second.citations;
    it->second.n_citations = c.n_citations;
  }

  AlignResult result;
  result.stats.n_anthology = papers.size();
  result.stats.n_citation_records = citations.size();
  for (const auto& [key, g] : groups) {
    if (g.papers > 1 || g.citations > 1) ++result.stats.collisions;
  }
  for (auto& p : papers) {
    const auto& g = groups.at(p.nlps_id);
    if (g.papers == 1 && g.citations == 1) {
      p.n_citations = g.n_citations;
      ++result.stats.n_aligned;
    } else {
      p.n_citations.reset();
    }
  }
  result.stats.coverage = papers.empty() ? 0.0
                                         : static_cast<double>(result.stats.n_aligned) /
                                               static_cast<double>(result.stats.n_anthology);
  result.papers = std::move(papers);
  return result;
}

/// Coverage as an integer percentage, rounded half up.
inline std::size_t coverage_percent(const AlignmentStats& stats) {
  if (stats.n_anthology == 0) return 0;
  return (200 * stats.n_aligned + stats.n_anthology) / (2 * stats.n_anthology);
}

inline std::string alignment_report(const AlignmentStats& stats) {
  std::ostringstream out;
  out << "anthology papers: " << stats.n_anthology << '\n'
      << "citation records: " << stats.n_citation_records << '\n'
      << "aligned papers:   " << stats.n_aligned << " (" << coverage_percent(stats) << "%)\n"
      << "key collisions:   " << stats.collisions << '\n';
  return out.str();
}

}  // namespace nlps
