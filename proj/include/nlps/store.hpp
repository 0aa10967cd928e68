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
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <istream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlps/errors.hpp"
#include "nlps/ingest.hpp"
#include "nlps/lexicons.hpp"
#include "nlps/records.hpp"
#include "nlps/text.hpp"
#include "nlps/tsv.hpp"

namespace nlps {

using text::tokenize_title;

inline std::set<std::string> extract_title_unigrams(std::string_view title) {
  const auto tokens = tokenize_title(title);
  return {tokens.begin(), tokens.end()};
}

inline std::set<std::string> extract_title_bigrams(std::string_view title) {
  const auto tokens = tokenize_title(title);
  std::set<std::string> out;
  for (std::size_t i = 1; i < tokens.size(); ++i) out.insert(tokens[i - 1] + " " + tokens[i]);
  return out;
}

/// Language names, each stored as the token sequence the title tokenizer
/// would produce for it.
class LanguageLexicon {
 public:
  LanguageLexicon() = default;

  template <typename Range>
  static LanguageLexicon from_names(const Range& names) {
    LanguageLexicon lex;
    std::set<std::string> seen;
    for (const auto& name : names) {
      auto tokens = tokenize_title(name);
      if (tokens.empty()) continue;
      auto label = text::join(tokens, " ");
      if (!seen.insert(label).second) continue;
      lex.entries_.push_back({std::move(label), std::move(tokens)});
    }
    std::sort(lex.entries_.begin(), lex.entries_.end(),
              [](const Entry& a, const Entry& b) { return a.label < b.label; });
    return lex;
  }

  static LanguageLexicon defaults() { return from_names(lexicons::kLanguages); }

  /// One name per line; blank lines and lines starting with '#' are ignored.
  static LanguageLexicon from_stream(std::istream& in) {
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
      const auto t = text::trim(line);
      if (t.empty() || t.front() == '#') continue;
      names.emplace_back(t);
    }
    return from_names(names);
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(std::string_view label) const {
    return std::binary_search(entries_.begin(), entries_.end(), label,
                              [](const auto& a, const auto& b) { return label_of(a) < label_of(b); });
  }

  /// Every entry whose tokens occur contiguously in `tokens`.
  std::set<std::string> find_in(const std::vector<std::string>& tokens) const {
    std::set<std::string> found;
    for (const auto& entry : entries_) {
      const auto& needle = entry.tokens;
      if (needle.size() > tokens.size()) continue;
      if (std::search(tokens.begin(), tokens.end(), needle.begin(), needle.end()) != tokens.end()) {
        found.insert(entry.label);
      }
    }
    return found;
  }

 private:
  struct Entry {
    std::string label;
    std::vector<std::string> tokens;
  };
  static std::string_view label_of(const Entry& e) { return e.label; }
  static std::string_view label_of(std::string_view s) { return s; }

  std::vector<Entry> entries_;
};

inline std::set<std::string> detect_language_mentions(std::string_view title, const LanguageLexicon& lexicon) {
  return lexicon.find_in(tokenize_title(title));
}

struct AuthorRow {
  std::string nlps_id;
  std::string first;
  std::string last;
  bool operator==(const AuthorRow&) const = default;
};

struct UnigramRow {
  std::string nlps_id;
  std::string unigram;
  bool operator==(const UnigramRow&) const = default;
};

struct BigramRow {
  std::string nlps_id;
  std::string bigram;
  bool operator==(const BigramRow&) const = default;
};

struct LanguageRow {
  std::string nlps_id;
  std::string language;
  bool operator==(const LanguageRow&) const = default;
};

struct Tables {
  std::vector<PaperRecord> papers;
  std::vector<AuthorRow> authors;
  std::vector<UnigramRow> unigrams;
  std::vector<BigramRow> bigrams;
  std::vector<LanguageRow> languages;
};

inline std::string utc_timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

/// Immutable query target: the relational tables plus lookup indexes.
/// Papers are ordered by nlps_id and satellite rows are grouped in paper
/// order, so a paper's rows form one contiguous range.
class Snapshot {
 public:
  using Postings = std::unordered_map<std::string, std::vector<std::uint32_t>>;

  Snapshot(Tables tables, AlignmentStats stats, std::string built_at)
      : tables_(std::move(tables)), stats_(stats), built_at_(std::move(built_at)) {
    index();
  }

  const std::vector<PaperRecord>& papers() const noexcept { return tables_.papers; }
  const std::vector<AuthorRow>& authors() const noexcept { return tables_.authors; }
  const std::vector<UnigramRow>& unigrams() const noexcept { return tables_.unigrams; }
  const std::vector<BigramRow>& bigrams() const noexcept { return tables_.bigrams; }
  const std::vector<LanguageRow>& languages() const noexcept { return tables_.languages; }
  const AlignmentStats& stats() const noexcept { return stats_; }
  const std::string& built_at() const noexcept { return built_at_; }
  std::size_t size() const noexcept { return tables_.papers.size(); }

  std::optional<std::size_t> index_of(std::string_view nlps_id) const {
    const auto it = std::lower_bound(tables_.papers.begin(), tables_.papers.end(), nlps_id,
                                     [](const PaperRecord& p, std::string_view id) { return p.nlps_id < id; });
    if (it == tables_.papers.end() || it->nlps_id != nlps_id) return std::nullopt;
    return static_cast<std::size_t>(it - tables_.papers.begin());
  }

  const PaperRecord* find(std::string_view nlps_id) const {
    const auto i = index_of(nlps_id);
    return i ? &tables_.papers[*i] : nullptr;
  }

  std::span<const UnigramRow> unigrams_of(std::size_t paper) const { return range(tables_.unigrams, unigram_off_, paper); }
  std::span<const BigramRow> bigrams_of(std::size_t paper) const { return range(tables_.bigrams, bigram_off_, paper); }
  std::span<const LanguageRow> languages_of(std::size_t paper) const {
    return range(tables_.languages, language_off_, paper);
  }

  /// Ascending paper indices carrying the value, or nullptr.
  const std::vector<std::uint32_t>* unigram_postings(const std::string& term) const { return lookup(unigram_post_, term); }
  const std::vector<std::uint32_t>* bigram_postings(const std::string& bigram) const { return lookup(bigram_post_, bigram); }
  const std::vector<std::uint32_t>* language_postings(const std::string& language) const {
    return lookup(language_post_, language);
  }

 private:
  template <typename Row>
  static std::span<const Row> range(const std::vector<Row>& rows, const std::vector<std::size_t>& off, std::size_t i) {
    return std::span<const Row>(rows).subspan(off[i], off[i + 1] - off[i]);
  }

  static const std::vector<std::uint32_t>* lookup(const Postings& p, const std::string& key) {
    const auto it = p.find(key);
    return it == p.end() ? nullptr : &it->second;
  }

  void index() {
    auto& papers = tables_.papers;
    std::sort(papers.begin(), papers.end(),
              [](const PaperRecord& a, const PaperRecord& b) { return a.nlps_id < b.nlps_id; });
    std::vector<std::string> dups;
    for (std::size_t i = 1; i < papers.size(); ++i) {
      if (papers[i].nlps_id == papers[i - 1].nlps_id && (dups.empty() || dups.back() != papers[i].nlps_id)) {
        dups.push_back(papers[i].nlps_id);
      }
    }
    if (!dups.empty()) {
      std::string msg = "duplicate nlps_id:";
      for (const auto& d : dups) msg += " '" + d + "'";
      throw BuildError(msg);
    }

    auto by_id = [](const auto& a, const auto& b) { return a.nlps_id < b.nlps_id; };
    std::stable_sort(tables_.authors.begin(), tables_.authors.end(), by_id);
    group(tables_.authors, author_off_, "authors", [](const AuthorRow&) { return std::string(); });
    group(tables_.unigrams, unigram_off_, "unigrams", [](const UnigramRow& r) { return r.unigram; });
    group(tables_.bigrams, bigram_off_, "bigrams", [](const BigramRow& r) { return r.bigram; });
    group(tables_.languages, language_off_, "languages", [](const LanguageRow& r) { return r.language; });

    for (std::size_t i = 0; i < papers.size(); ++i) {
      if (author_off_[i + 1] - author_off_[i] != papers[i].authors.size()) {
        throw BuildError("authors table disagrees with paper '" + papers[i].nlps_id + "'");
      }
      const auto idx = static_cast<std::uint32_t>(i);
      for (const auto& r : unigrams_of(i)) unigram_post_[r.unigram].push_back(idx);
      for (const auto& r : bigrams_of(i)) bigram_post_[r.bigram].push_back(idx);
      for (const auto& r : languages_of(i)) language_post_[r.language].push_back(idx);
    }
  }

  // Sorts rows into paper order (value order within a paper when `value`
  // yields a key), checks references and uniqueness, and records offsets.
  template <typename Row, typename Value>
  void group(std::vector<Row>& rows, std::vector<std::size_t>& off, std::string_view table, Value value) {
    std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
      if (a.nlps_id != b.nlps_id) return a.nlps_id < b.nlps_id;
      return value(a) < value(b);
    });
    const auto& papers = tables_.papers;
    off.assign(papers.size() + 1, 0);
    std::size_t r = 0;
    for (std::size_t p = 0; p < papers.size(); ++p) {
      off[p] = r;
      if (r < rows.size() && rows[r].nlps_id < papers[p].nlps_id) break;
      while (r < rows.size() && rows[r].nlps_id == papers[p].nlps_id) {
        const auto v = value(rows[r]);
        if (!v.empty() && r > off[p] && value(rows[r - 1]) == v) {
          throw BuildError(std::string(table) + " table repeats ('" + rows[r].nlps_id + "', '" + v + "')");
        }
        ++r;
      }
    }
    off[papers.size()] = r;
    if (r != rows.size()) {
      throw BuildError(std::string(table) + " table references unknown paper '" + rows[r].nlps_id + "'");
    }
  }

  Tables tables_;
  AlignmentStats stats_;
  std::string built_at_;
  std::vector<std::size_t> author_off_, unigram_off_, bigram_off_, language_off_;
  Postings unigram_post_, bigram_post_, language_post_;
};

/// Materializes the tables from aligned records.
inline Snapshot build_tables(std::vector<PaperRecord> records, const LanguageLexicon& lexicon,
                             const AlignmentStats& stats, std::string built_at = utc_timestamp()) {
  Tables t;
  for (const auto& p : records) {
    if (p.authors.empty()) throw BuildError("paper '" + p.nlps_id + "' has no authors");
    for (const auto& a : p.authors) t.authors.push_back({p.nlps_id, a.first, a.last});
    const auto tokens = tokenize_title(p.title);
    const std::set<std::string> unigrams(tokens.begin(), tokens.end());
    for (const auto& u : unigrams) t.unigrams.push_back({p.nlps_id, u});
    std::set<std::string> bigrams;
    for (std::size_t i = 1; i < tokens.size(); ++i) bigrams.insert(tokens[i - 1] + " " + tokens[i]);
    for (const auto& b : bigrams) t.bigrams.push_back({p.nlps_id, b});
    for (const auto& l : lexicon.find_in(tokens)) t.languages.push_back({p.nlps_id, l});
  }
  t.papers = std::move(records);
  return Snapshot(std::move(t), stats, std::move(built_at));
}

template <typename L, typename R>
struct JoinedRow {
  const L* left;
  const R* right;
};

/// Hash join on a key extracted from each side. Output follows left order,
/// then right order within a key.
template <typename L, typename R, typename KeyL, typename KeyR>
std::vector<JoinedRow<L, R>> inner_join(std::span<const L> left, std::span<const R> right, KeyL key_left,
                                        KeyR key_right) {
  std::unordered_map<std::string_view, std::vector<const R*>> index;
  for (const auto& r : right) index[std::string_view(key_right(r))].push_back(&r);
  std::vector<JoinedRow<L, R>> out;
  for (const auto& l : left) {
    const auto it = index.find(std::string_view(key_left(l)));
    if (it == index.end()) continue;
    for (const R* r : it->second) out.push_back({&l, r});
  }
  return out;
}

/// Joins the papers table with a satellite table on nlps_id.
template <typename Row>
std::vector<JoinedRow<PaperRecord, Row>> join_papers(std::span<const PaperRecord> papers, std::span<const Row> rows) {
  return inner_join<PaperRecord, Row>(
      papers, rows, [](const PaperRecord& p) -> const std::string& { return p.nlps_id; },
      [](const Row& r) -> const std::string& { return r.nlps_id; });
}

// ---------------------------------------------------------------------------
// On-disk form

inline constexpr std::array<std::string_view, 6> kSnapshotFiles{
    "papers.out.tsv", "authors.out.tsv", "unigrams.out.tsv", "bigrams.out.tsv", "languages.out.tsv", "stats.json"};

namespace detail {

inline std::string optional_count(const std::optional<std::int64_t>& n) { return n ? std::to_string(*n) : ""; }

inline std::string render_file(const Snapshot& s, std::string_view name) {
  std::ostringstream out;
  if (name == "papers.out.tsv") {
    tsv::write_row(out, {"nlps_id", "aa_id", "title", "year", "venue", "paper_type", "authors", "n_citations"});
    for (const auto& p : s.papers()) {
      tsv::write_row(out, {p.nlps_id, p.aa_id, p.title, std::to_string(p.year), p.venue, to_string(p.paper_type),
                           format_authors(p.authors), optional_count(p.n_citations)});
    }
  } else if (name == "authors.out.tsv") {
    tsv::write_row(out, {"nlps_id", "first", "last"});
    for (const auto& r : s.authors()) tsv::write_row(out, {r.nlps_id, r.first, r.last});
  } else if (name == "unigrams.out.tsv") {
    tsv::write_row(out, {"nlps_id", "unigram"});
    for (const auto& r : s.unigrams()) tsv::write_row(out, {r.nlps_id, r.unigram});
  } else if (name == "bigrams.out.tsv") {
    tsv::write_row(out, {"nlps_id", "bigram"});
    for (const auto& r : s.bigrams()) tsv::write_row(out, {r.nlps_id, r.bigram});
  } else if (name == "languages.out.tsv") {
    tsv::write_row(out, {"nlps_id", "language"});
    for (const auto& r : s.languages()) tsv::write_row(out, {r.nlps_id, r.language});
  } else {
    out << nlohmann::json(s.stats()).dump(2) << '\n';
  }
  return out.str();
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

}  // namespace detail

/// Writes the five tables and stats.json. Files are staged and renamed into
/// place only after every one has been written.
inline void write_snapshot(const Snapshot& s, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::pair<fs::path, fs::path>> staged;
  for (const auto name : kSnapshotFiles) {
    const auto final_path = dir / name;
    auto tmp = final_path;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << detail::render_file(s, name);
    out.close();
    if (!out) {
      for (const auto& [t, f] : staged) fs::remove(t, ec);
      fs::remove(tmp, ec);
      throw IoError("cannot write " + tmp.string());
    }
    staged.emplace_back(tmp, final_path);
  }
  for (const auto& [tmp, final_path] : staged) {
    fs::rename(tmp, final_path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
  }
}

/// Reads a directory produced by write_snapshot.
inline Snapshot load_snapshot(const std::filesystem::path& dir) {
  Tables t;
  {
    auto in = detail::open_input(dir / "papers.out.tsv");
    static constexpr std::array<std::string_view, 8> cols{"nlps_id", "venue",   "aa_id",      "title",
                                                          "year",    "authors", "paper_type", "n_citations"};
    tsv::Reader r(in, cols);
    const auto c_id = *r.column("nlps_id"), c_aa = *r.column("aa_id"), c_title = *r.column("title"),
               c_year = *r.column("year"), c_venue = *r.column("venue"), c_type = *r.column("paper_type"),
               c_auth = *r.column("authors"), c_cit = *r.column("n_citations");
    while (r.next()) {
      auto fail = [&](const std::string& m) {
        throw BuildError("papers.out.tsv line " + std::to_string(r.line_number()) + ": " + m);
      };
      if (r.fields().size() != r.width()) fail("wrong field count");
      PaperRecord p;
      p.nlps_id = r.field(c_id);
      p.aa_id = r.field(c_aa);
      p.title = r.field(c_title);
      p.venue = r.field(c_venue);
      const auto year = tsv::parse_int<int>(r.field(c_year));
      if (!year) fail("bad year");
      p.year = *year;
      const auto type = paper_type_from_string(r.field(c_type));
      if (!type) fail("bad paper_type");
      p.paper_type = *type;
      try {
        p.authors = parse_authors(r.field(c_auth), {});
      } catch (const ValidationError& e) {
        fail(e.what());
      }
      if (!r.field(c_cit).empty()) {
        const auto n = tsv::parse_int<std::int64_t>(r.field(c_cit));
        if (!n || *n < 0) fail("bad n_citations");
        p.n_citations = *n;
      }
      t.papers.push_back(std::move(p));
    }
  }
  auto read_pairs = [&](std::string_view file, std::string_view value_col, auto emit) {
    auto in = detail::open_input(dir / file);
    const std::array<std::string_view, 2> cols{"nlps_id", value_col};
    tsv::Reader r(in, cols);
    const auto c_id = *r.column("nlps_id");
    const auto c_val = *r.column(value_col);
    while (r.next()) emit(r, c_id, c_val);
  };
  {
    auto in = detail::open_input(dir / "authors.out.tsv");
    static constexpr std::array<std::string_view, 3> cols{"nlps_id", "first", "last"};
    tsv::Reader r(in, cols);
    const auto c_id = *r.column("nlps_id"), c_first = *r.column("first"), c_last = *r.column("last");
    while (r.next()) t.authors.push_back({std::string(r.field(c_id)), std::string(r.field(c_first)),
                                          std::string(r.field(c_last))});
  }
  read_pairs("unigrams.out.tsv", "unigram", [&](const tsv::Reader& r, std::size_t id, std::size_t v) {
    t.unigrams.push_back({std::string(r.field(id)), std::string(r.field(v))});
  });
  read_pairs("bigrams.out.tsv", "bigram", [&](const tsv::Reader& r, std::size_t id, std::size_t v) {
    t.bigrams.push_back({std::string(r.field(id)), std::string(r.field(v))});
  });
  read_pairs("languages.out.tsv", "language", [&](const tsv::Reader& r, std::size_t id, std::size_t v) {
    t.languages.push_back({std::string(r.field(id)), std::string(r.field(v))});
  });
  AlignmentStats stats;
  {
    auto in = detail::open_input(dir / "stats.json");
    try {
      stats = nlohmann::json::parse(in).get<AlignmentStats>();
    } catch (const nlohmann::json::exception& e) {
      throw BuildError(std::string("stats.json: ") + e.what());
    }
  }
  return Snapshot(std::move(t), stats, utc_timestamp());
}

}  // namespace nlps
