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
#include <cctype>
#include <chrono>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlps/align.hpp"
#include "nlps/errors.hpp"
#include "nlps/records.hpp"
#include "nlps/text.hpp"
#include "nlps/tsv.hpp"

namespace nlps {

inline constexpr int kMinYear = 1965;

inline int current_year() {
  const auto now = std::chrono::system_clock::now();
  return static_cast<int>(std::chrono::year_month_day(std::chrono::floor<std::chrono::days>(now)).year());
}

/// Variant -> canonical author names. Chains (a -> b -> c) are collapsed on
/// construction so that a single lookup is enough and lookups are idempotent.
class AliasTable {
 public:
  using Name = std::pair<std::string, std::string>;  // (last, first)

  AliasTable() = default;

  explicit AliasTable(std::map<Name, Name> entries) : entries_(std::move(entries)) { resolve_chains(); }

  /// Columns: variant_last, variant_first, canonical_last, canonical_first.
  static AliasTable from_tsv(std::istream& in) {
    static constexpr std::array<std::string_view, 4> cols{"variant_last", "variant_first", "canonical_last",
                                                          "canonical_first"};
    tsv::Reader reader(in, cols);
    const auto vl = *reader.column("variant_last");
    const auto vf = *reader.column("variant_first");
    const auto cl = *reader.column("canonical_last");
    const auto cf = *reader.column("canonical_first");
    std::map<Name, Name> entries;
    while (reader.next()) {
      Name variant{std::string(text::trim(reader.field(vl))), std::string(text::trim(reader.field(vf)))};
      Name canonical{std::string(text::trim(reader.field(cl))), std::string(text::trim(reader.field(cf)))};
      if (variant.first.empty() || canonical.first.empty()) {
        throw ValidationError("alias line " + std::to_string(reader.line_number()) + ": empty last name");
      }
      if (variant == canonical) continue;
      const auto [it, inserted] = entries.emplace(variant, canonical);
      if (!inserted && it->second != canonical) {
        throw ValidationError("alias line " + std::to_string(reader.line_number()) + ": conflicting entry for '" +
                              variant.first + ", " + variant.second + "'");
      }
    }
    return AliasTable(std::move(entries));
  }

  const Name* find(const Name& variant) const {
    const auto it = entries_.find(variant);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  void resolve_chains() {
    for (auto& [variant, target] : entries_) {
      std::set<Name> seen{variant};
      while (true) {
        const auto next = entries_.find(target);
        if (next == entries_.end()) break;
        if (!seen.insert(target).second) {
          throw ValidationError("alias cycle through '" + target.first + ", " + target.second + "'");
        }
        target = next->second;
      }
    }
  }

  std::map<Name, Name> entries_;
};

inline std::string display_name(std::string_view first, std::string_view last) {
  if (first.empty()) return std::string(last);
  return std::string(last) + ", " + std::string(first);
}

inline AuthorName canonicalize_author(std::string_view first, std::string_view last, const AliasTable& aliases) {
  AuthorName name{std::string(text::trim(first)), std::string(text::trim(last)), {}};
  if (name.last.empty()) throw ValidationError("author last name is empty");
  if (const auto* canonical = aliases.find({name.last, name.first})) {
    name.last = canonical->first;
    name.first = canonical->second;
  }
  name.canonical = display_name(name.first, name.last);
  return name;
}

/// Derives a paper type from the venue when the input leaves it blank.
inline PaperType derive_paper_type(std::string_view venue) {
  const auto v = " " + text::normalize_title(venue) + " ";
  auto has = [&](std::string_view word) { return v.find(" " + std::string(word) + " ") != std::string::npos; };
  if (has("tutorial") || has("tutorials") || has("tutorial abstracts")) return PaperType::tutorial;
  if (has("demo") || has("demos") || has("demonstration") || has("demonstrations")) return PaperType::demo;
  if (has("shared task") || has("semeval") || has("wmt")) return PaperType::shared_task;
  if (has("workshop") || has("workshops")) return PaperType::workshop;
  if (has("journal") || has("transactions") || has("cl") || has("tacl")) return PaperType::journal;
  for (const auto conf : {"acl", "emnlp", "naacl", "eacl", "coling", "lrec", "ijcnlp", "aacl", "conll", "ranlp",
                          "hlt", "anlp"}) {
    if (has(conf)) return PaperType::main_conference;
  }
  return PaperType::other;
}

inline PaperType parse_paper_type(std::string_view tag, std::string_view venue, bool& ok) {
  ok = true;
  const auto t = text::to_lower(text::trim(tag));
  if (t.empty()) return derive_paper_type(venue);
  if (auto known = paper_type_from_string(t)) return *known;
  if (t == "frontmatter" || t == "foreword" || t == "schedule" || t == "program" || t == "index") {
    return PaperType::front_matter;
  }
  ok = false;
  return PaperType::other;
}

/// Authors field: semicolon-separated "Last, First" entries.
inline std::vector<AuthorName> parse_authors(std::string_view field, const AliasTable& aliases) {
  std::vector<AuthorName> out;
  for (const auto entry : text::split(field, ';')) {
    if (text::trim(entry).empty()) continue;
    const auto comma = entry.find(',');
    const auto last = comma == std::string_view::npos ? entry : entry.substr(0, comma);
    const auto first = comma == std::string_view::npos ? std::string_view{} : entry.substr(comma + 1);
    out.push_back(canonicalize_author(first, last, aliases));
  }
  if (out.empty()) throw ValidationError("no authors");
  return out;
}

inline std::string format_authors(const std::vector<AuthorName>& authors) {
  std::string out;
  for (std::size_t i = 0; i < authors.size(); ++i) {
    if (i != 0) out += "; ";
    out += display_name(authors[i].first, authors[i].last);
  }
  return out;
}

struct IngestResult {
  std::vector<PaperRecord> records;
  IngestReport report;
};

inline constexpr std::array<std::string_view, 6> kPaperColumns{"aa_id", "title", "year", "venue", "paper_type",
                                                               "authors"};

/// Parses papers.tsv. Malformed lines and repeated aa_ids end up in
/// parse_errors; every returned record is valid. The report counts all
/// valid records as kept until non-papers are filtered.
inline IngestResult parse_anthology_export(std::istream& in, const AliasTable& aliases = {},
                                           int max_year = current_year()) {
  tsv::Reader reader(in, kPaperColumns);
  const auto c_id = *reader.column("aa_id");
  const auto c_title = *reader.column("title");
  const auto c_year = *reader.column("year");
  const auto c_venue = *reader.column("venue");
  const auto c_type = *reader.column("paper_type");
  const auto c_authors = *reader.column("authors");

  IngestResult result;
  std::unordered_map<std::string, std::size_t> first_seen;
  while (reader.next()) {
    ++result.report.total_read;
    auto fail = [&](std::string msg) {
      result.report.parse_errors.push_back({reader.line_number(), std::move(msg)});
    };
    if (reader.fields().size() != reader.width()) {
      fail("expected " + std::to_string(reader.width()) + " fields, got " + std::to_string(reader.fields().size()));
      continue;
    }
    PaperRecord rec;
    rec.aa_id = std::string(text::trim(reader.field(c_id)));
    rec.title = std::string(text::trim(reader.field(c_title)));
    rec.venue = std::string(text::trim(reader.field(c_venue)));
    if (rec.aa_id.empty()) {
      fail("empty aa_id");
      continue;
    }
    if (rec.title.empty()) {
      fail("empty title");
      continue;
    }
    const auto year = tsv::parse_int<int>(reader.field(c_year));
    if (!year || *year < kMinYear || *year > max_year) {
      fail("invalid year '" + std::string(reader.field(c_year)) + "'");
      continue;
    }
    rec.year = *year;
    bool type_ok = true;
    rec.paper_type = parse_paper_type(reader.field(c_type), rec.venue, type_ok);
    if (!type_ok) {
      fail("unknown paper_type '" + std::string(reader.field(c_type)) + "'");
      continue;
    }
    try {
      rec.authors = parse_authors(reader.field(c_authors), aliases);
      rec.nlps_id = build_alignment_key(rec.title, rec.year, rec.authors.front().last);
    } catch (const ValidationError& e) {
      fail(e.what());
      continue;
    }
    const auto [it, inserted] = first_seen.emplace(rec.aa_id, reader.line_number());
    if (!inserted) {
      fail("duplicate aa_id '" + rec.aa_id + "' (first seen on line " + std::to_string(it->second) + ")");
      continue;
    }
    result.records.push_back(std::move(rec));
  }
  result.report.kept = result.records.size();
  return result;
}

// Titles of front matter and programme pages. Matched case-insensitively as
// whole words at the start of the title.
inline constexpr std::array<std::string_view, 4> kNonPaperTitlePrefixes{"proceedings of", "front matter", "program",
                                                                        "schedule"};

inline bool is_non_paper(const PaperRecord& rec) {
  if (rec.paper_type == PaperType::front_matter) return true;
  const auto title = text::to_lower(text::trim(rec.title));
  for (const auto prefix : kNonPaperTitlePrefixes) {
    if (!title.starts_with(prefix)) continue;
    if (title.size() == prefix.size()) return true;
    const auto next = static_cast<unsigned char>(title[prefix.size()]);
    if (!std::isalnum(next) && next < 0x80) return true;
  }
  return false;
}

struct NonPaperFilterResult {
  std::vector<PaperRecord> kept;
  std::size_t discarded = 0;
};

inline NonPaperFilterResult filter_non_papers(std::vector<PaperRecord> records) {
  NonPaperFilterResult result;
  result.kept.reserve(records.size());
  for (auto& rec : records) {
    if (is_non_paper(rec)) {
      ++result.discarded;
    } else {
      result.kept.push_back(std::move(rec));
    }
  }
  return result;
}

/// parse_anthology_export followed by filter_non_papers, with one report.
inline IngestResult ingest_anthology(std::istream& in, const AliasTable& aliases = {},
                                     int max_year = current_year()) {
  auto parsed = parse_anthology_export(in, aliases, max_year);
  auto filtered = filter_non_papers(std::move(parsed.records));
  parsed.report.kept = filtered.kept.size();
  parsed.report.discarded_non_papers = filtered.discarded;
  return {std::move(filtered.kept), std::move(parsed.report)};
}

/// Writes records back in the papers.tsv input schema.
inline void write_anthology_export(std::ostream& out, const std::vector<PaperRecord>& records) {
  tsv::write_row(out, {"aa_id", "title", "year", "venue", "paper_type", "authors"});
  for (const auto& r : records) {
    tsv::write_row(out, {r.aa_id, r.title, std::to_string(r.year), r.venue, to_string(r.paper_type),
                         format_authors(r.authors)});
  }
}

}  // namespace nlps
