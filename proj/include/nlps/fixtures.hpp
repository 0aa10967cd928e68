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
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlps/errors.hpp"
#include "nlps/tsv.hpp"

// Synthetic corpora with known ground truth. Titles are composed from word
// lists, so the expected tokens, bigrams, language mentions and alignment
// keys are known by construction rather than recomputed with the library.
namespace nlps::fixtures {

inline constexpr std::string_view kTitleWords[]{
    "neural", "parsing", "translation", "sentiment", "emotion", "emotions", "affect", "valence",
    "machine", "question", "answering", "word", "embeddings", "syntax", "semantics", "semantic",
    "dependency", "tagging", "corpus", "annotation", "discourse", "dialogue", "summarization", "entity",
    "recognition", "named", "coreference", "resolution", "statistical", "models", "model", "learning",
    "deep", "attention", "transformer", "lexical", "morphology", "speech", "generation", "retrieval",
    "information", "extraction", "relation", "knowledge", "graph", "evaluation", "metrics", "dataset",
    "bilingual", "multilingual", "unsupervised", "supervised", "adaptation", "domain", "robust", "analysis",
    "detection", "classification", "text", "sequence", "labeling", "character", "grammar", "induction",
    "alignment", "phrase", "decoding", "inference", "reasoning", "commonsense", "argument", "mining",
    "multi-task", "part-of-speech", "cross-lingual", "low-resource", "end-to-end", "semi-supervised",
    "a", "for", "of", "the", "with", "and", "in", "on", "via", "towards",
};

// Single-token entries of the default language lexicon.
inline constexpr std::string_view kTitleLanguages[]{
    "chinese", "english", "swahili", "german", "arabic", "hindi", "japanese", "french", "spanish",
    "czech", "urdu", "finnish", "turkish", "basque", "yoruba", "korean", "russian", "bengali",
};

inline constexpr std::string_view kNoiseWords[]{
    "protein", "galaxy", "enzyme", "quantum", "lattice", "thermal", "cortex", "tectonic",
    "plasma", "genome", "catalyst", "orbital", "membrane", "isotope", "neutrino", "polymer",
};

struct AuthorSeed {
  std::string_view last;
  std::string_view first;
};

inline constexpr AuthorSeed kAuthors[]{
    {"Manning", "Christopher"}, {"Lee", "Lillian"},    {"Jurafsky", "Dan"},       {"Mohammad", "Saif"},
    {"Turney", "Peter"},        {"Riloff", "Ellen"},   {"Gurevych", "Iryna"},     {"Strube", "Michael"},
    {"Post", "Matt"},           {"Zesch", "Torsten"},  {"Knowles", "Rebecca"},    {"Goutte", "Cyril"},
    {"Joanis", "Eric"},         {"Small", "Tara"},     {"Nejadgholi", "Isar"},    {"Bird", "Steven"},
    {"Radev", "Dragomir"},      {"Teufel", "Simone"},  {"Koehn", "Philipp"},      {"Och", "Franz"},
    {"Ney", "Hermann"},         {"Collins", "Michael"}, {"Pereira", "Fernando"},  {"Marcus", "Mitchell"},
    {"Nivre", "Joakim"},        {"Smith", "Noah"},     {"Eisner", "Jason"},       {"Klein", "Dan"},
    {"Hovy", "Eduard"},         {"Resnik", "Philip"},  {"Pang", "Bo"},            {"Liu", "Bing"},
    {"Wiebe", "Janyce"},        {"Hirst", "Graeme"},   {"Webber", "Bonnie"},      {"Steedman", "Mark"},
    {"Johnson", "Mark"},        {"Charniak", "Eugene"}, {"Yarowsky", "David"},    {"Church", "Kenneth"},
    {"Mitkov", "Ruslan"},       {"Vossen", "Piek"},    {"Palmer", "Martha"},      {"Fung", "Pascale"},
    {"Sun", "Maosong"},         {"Tsujii", "Junichi"}, {"Matsumoto", "Yuji"},     {"Nakov", "Preslav"},
    {"Schuetze", "Hinrich"},    {"Dagan", "Ido"},      {"Barzilay", "Regina"},    {"McKeown", "Kathleen"},
    {"Van Durme", "Benjamin"},  {"O'Connor", "Brendan"}, {"Garcia-Serrano", "Ana"}, {"de Rijke", "Maarten"},
};

struct AliasSeed {
  AuthorSeed variant;
  AuthorSeed canonical;
};

// Variant spellings written into papers.tsv; the canonical side is what the
// tables must contain. The last one is a change of last name.
inline constexpr AliasSeed kAliases[]{
    {{"Manning", "Chris"}, {"Manning", "Christopher"}},
    {{"Jurafsky", "Daniel"}, {"Jurafsky", "Dan"}},
    {{"Smith", "Noah A."}, {"Smith", "Noah"}},
    {{"Schutze", "Hinrich"}, {"Schuetze", "Hinrich"}},
};

struct VenueSeed {
  std::string_view venue;
  std::string_view type;
  std::string_view aa_prefix;
};

inline constexpr VenueSeed kVenues[]{
    {"ACL", "main-conference", "P"},      {"EMNLP", "main-conference", "D"},  {"NAACL", "main-conference", "N"},
    {"COLING", "main-conference", "C"},   {"LREC", "main-conference", "L"},   {"CL", "journal", "J"},
    {"TACL", "journal", "Q"},             {"WASSA Workshop", "workshop", "W"}, {"BioNLP Workshop", "workshop", "W"},
    {"SemEval", "shared-task", "S"},      {"ACL Demos", "demo", "P"},         {"ACL Tutorials", "tutorial", "P"},
};

struct GeneratorConfig {
  std::uint64_t seed = 7;
  std::size_t n_papers = 200;
  int year_lo = 1990;
  int year_hi = 2019;
  double alignment_rate = 0.74;
  double collision_rate = 0.05;
};

inline void to_json(nlohmann::json& j, const GeneratorConfig& c) {
  j = nlohmann::json{{"seed", c.seed},
                     {"n_papers", c.n_papers},
                     {"year_lo", c.year_lo},
                     {"year_hi", c.year_hi},
                     {"alignment_rate", c.alignment_rate},
                     {"collision_rate", c.collision_rate}};
}

struct GeneratedCorpus {
  std::string papers_tsv;
  std::string citations_tsv;
  std::string aliases_tsv;
  nlohmann::json manifest;
};

namespace detail {

// Expected key normalization for the ASCII strings this generator emits.
inline std::string ascii_normal(std::string_view s) {
  std::string out;
  bool space = false;
  for (const unsigned char c : s) {
    if (std::isalnum(c)) {
      if (space && !out.empty()) out += ' ';
      space = false;
      out += static_cast<char>(std::tolower(c));
    } else {
      space = true;
    }
  }
  return out;
}

inline std::string capitalize(std::string_view w) {
  std::string out(w);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

template <typename T, std::size_t N>
const T& pick(std::mt19937_64& rng, const T (&arr)[N]) {
  return arr[std::uniform_int_distribution<std::size_t>(0, N - 1)(rng)];
}

inline bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct Paper {
  std::string aa_id;
  std::string title;
  std::vector<std::string> tokens;
  int year = 0;
  VenueSeed venue;
  bool type_blank = false;
  std::vector<AuthorSeed> authors;       // canonical
  std::vector<AuthorSeed> written;       // as written in papers.tsv
  std::string key;
  std::vector<std::string> languages;
};

}  // namespace detail

inline GeneratedCorpus generate_corpus(const GeneratorConfig& cfg) {
  if (cfg.n_papers < 1) throw ValidationError("n_papers must be at least 1");
  if (!(cfg.alignment_rate >= 0.0 && cfg.alignment_rate <= 1.0)) {
    throw ValidationError("alignment_rate must be in [0, 1]");
  }
  if (!(cfg.collision_rate >= 0.0 && cfg.collision_rate <= 1.0)) {
    throw ValidationError("collision_rate must be in [0, 1]");
  }
  if (cfg.year_lo < 1965 || cfg.year_lo > cfg.year_hi) throw ValidationError("invalid year span");

  using namespace detail;
  std::mt19937_64 rng(cfg.seed);
  const auto n = cfg.n_papers;
  const auto n_aligned = static_cast<std::size_t>(std::llround(cfg.alignment_rate * static_cast<double>(n)));
  const auto n_collide = std::min(static_cast<std::size_t>(std::llround(cfg.collision_rate * static_cast<double>(n))),
                                  n - n_aligned);
  const std::size_t n_front = std::max<std::size_t>(1, n / 50);

  std::uniform_int_distribution<int> year_dist(cfg.year_lo, cfg.year_hi);
  std::uniform_int_distribution<std::size_t> len_dist(2, 7);
  std::uniform_int_distribution<std::size_t> author_count(1, 4);
  std::lognormal_distribution<double> cites(2.0, 1.6);
  std::size_t aa_counter = 0;

  auto next_aa_id = [&](std::string_view prefix, int year) {
    std::ostringstream id;
    id << prefix << (year % 100 < 10 ? "0" : "") << (year % 100) << '-' << (1000 + aa_counter++);
    return id.str();
  };

  auto pick_authors = [&](std::vector<AuthorSeed>& canonical, std::vector<AuthorSeed>& written) {
    std::set<std::string_view> used;
    const auto k = author_count(rng);
    while (canonical.size() < k) {
      const auto& a = pick(rng, kAuthors);
      if (!used.insert(a.last).second) continue;
      canonical.push_back(a);
      AuthorSeed w = a;
      for (const auto& alias : kAliases) {
        if (alias.canonical.last == a.last && alias.canonical.first == a.first && chance(rng, 0.5)) w = alias.variant;
      }
      written.push_back(w);
    }
  };

  std::vector<Paper> papers;
  std::unordered_set<std::string> keys;
  while (papers.size() < n) {
    Paper p;
    p.year = year_dist(rng);
    p.venue = pick(rng, kVenues);
    p.type_blank = p.venue.type == "workshop" && chance(rng, 0.5);
    pick_authors(p.authors, p.written);

    const auto len = len_dist(rng);
    for (std::size_t i = 0; i < len; ++i) p.tokens.emplace_back(pick(rng, kTitleWords));
    if (chance(rng, 0.2)) {
      const std::string lang(pick(rng, kTitleLanguages));
      const auto at = std::uniform_int_distribution<std::size_t>(0, p.tokens.size())(rng);
      p.tokens.insert(p.tokens.begin() + static_cast<std::ptrdiff_t>(at), lang);
      if (chance(rng, 0.25)) {
        const std::string other(pick(rng, kTitleLanguages));
        p.tokens.insert(p.tokens.begin() + static_cast<std::ptrdiff_t>(at) + 1, other);
      }
    }
    std::string norm;
    for (const auto& t : p.tokens) {
      if (!norm.empty()) norm += ' ';
      norm += ascii_normal(t);
    }
    p.key = norm + "|" + std::to_string(p.year) + "|" + ascii_normal(p.authors.front().last);
    if (!keys.insert(p.key).second) continue;

    // Surface form: title case or not, with occasional colon or comma.
    const bool title_case = chance(rng, 0.6);
    const auto colon_at = p.tokens.size() > 2 && chance(rng, 0.3)
                              ? std::uniform_int_distribution<std::size_t>(1, p.tokens.size() - 1)(rng)
                              : 0;
    for (std::size_t i = 0; i < p.tokens.size(); ++i) {
      if (i != 0) p.title += (i == colon_at) ? ": " : (chance(rng, 0.05) ? ", " : " ");
      p.title += (title_case || i == 0) ? capitalize(p.tokens[i]) : p.tokens[i];
    }
    if (chance(rng, 0.1)) p.title += "?";

    std::set<std::string> langs;
    for (const auto& t : p.tokens) {
      for (const auto l : kTitleLanguages) {
        if (t == l) langs.insert(t);
      }
    }
    p.languages.assign(langs.begin(), langs.end());
    p.aa_id = next_aa_id(p.venue.aa_prefix, p.year);
    papers.push_back(std::move(p));
  }

  // Which papers align, which collide: a seeded permutation.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> outcome(n, 0);  // 0 unaligned, 1 aligned, 2 collision
  for (std::size_t i = 0; i < n_aligned; ++i) outcome[order[i]] = 1;
  for (std::size_t i = n_aligned; i < n_aligned + n_collide; ++i) outcome[order[i]] = 2;

  struct Cite {
    std::string title;
    int year;
    std::string last;
    std::int64_t n;
  };
  std::vector<Cite> citations;
  std::vector<std::optional<std::int64_t>> expected_cites(n);
  auto draw_count = [&] { return static_cast<std::int64_t>(std::floor(cites(rng))) - 1; };
  auto variant_title = [&](const Paper& p) {
    std::string t = p.title;
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0: std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); }); break;
      case 1: t += "."; break;
      case 2: std::replace(t.begin(), t.end(), '-', ' '); break;
      default: break;
    }
    return t;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = papers[i];
    const std::string last(p.authors.front().last);
    if (outcome[i] == 1) {
      const auto c = std::max<std::int64_t>(0, draw_count());
      expected_cites[i] = c;
      citations.push_back({variant_title(p), p.year, chance(rng, 0.2) ? ascii_normal(last) : last, c});
    } else if (outcome[i] == 2) {
      citations.push_back({p.title, p.year, last, std::max<std::int64_t>(0, draw_count())});
      citations.push_back({variant_title(p), p.year, last, std::max<std::int64_t>(0, draw_count())});
    } else if (chance(rng, 0.5)) {
      // Near miss: off by one year. Skipped if that happens to be a real key.
      const int year = p.year + 1;
      std::string norm = p.key.substr(0, p.key.find('|'));
      if (!keys.contains(norm + "|" + std::to_string(year) + "|" + ascii_normal(last))) {
        citations.push_back({p.title, year, last, std::max<std::int64_t>(0, draw_count())});
      }
    }
  }
  // Citation records for papers outside the anthology.
  for (std::size_t i = 0; i < n / 2; ++i) {
    std::string title;
    const auto len = len_dist(rng);
    for (std::size_t w = 0; w < len; ++w) title += (w ? " " : "") + capitalize(pick(rng, kNoiseWords));
    citations.push_back({title, year_dist(rng), std::string(pick(rng, kAuthors).last),
                         std::max<std::int64_t>(0, draw_count())});
  }
  std::shuffle(citations.begin(), citations.end(), rng);

  // Rows in papers.tsv: the papers plus front matter, in shuffled order.
  struct Row {
    std::string aa_id, title, year, venue, type, authors;
  };
  std::vector<Row> rows;
  auto author_field = [](const std::vector<AuthorSeed>& as) {
    std::string s;
    for (std::size_t i = 0; i < as.size(); ++i) {
      if (i) s += "; ";
      s += std::string(as[i].last) + ", " + std::string(as[i].first);
    }
    return s;
  };
  for (const auto& p : papers) {
    rows.push_back({p.aa_id, p.title, std::to_string(p.year), std::string(p.venue.venue),
                    p.type_blank ? std::string() : std::string(p.venue.type), author_field(p.written)});
  }
  for (std::size_t i = 0; i < n_front; ++i) {
    const int year = year_dist(rng);
    const auto& v = pick(rng, kVenues);
    std::vector<AuthorSeed> as{pick(rng, kAuthors)};
    if (i % 2 == 0) {
      rows.push_back({next_aa_id(v.aa_prefix, year), "Front Matter", std::to_string(year), std::string(v.venue),
                      "front-matter", author_field(as)});
    } else {
      rows.push_back({next_aa_id(v.aa_prefix, year), "Proceedings of the " + std::string(v.venue) + " " +
                                                         std::to_string(year),
                      std::to_string(year), std::string(v.venue), std::string(v.type), author_field(as)});
    }
  }
  std::shuffle(rows.begin(), rows.end(), rng);

  GeneratedCorpus out;
  {
    std::ostringstream s;
    tsv::write_row(s, {"aa_id", "title", "year", "venue", "paper_type", "authors"});
    for (const auto& r : rows) tsv::write_row(s, {r.aa_id, r.title, r.year, r.venue, r.type, r.authors});
    out.papers_tsv = s.str();
  }
  {
    std::ostringstream s;
    tsv::write_row(s, {"title", "year", "first_author_last", "n_citations"});
    for (const auto& c : citations) tsv::write_row(s, {c.title, std::to_string(c.year), c.last, std::to_string(c.n)});
    out.citations_tsv = s.str();
  }
  {
    std::ostringstream s;
    tsv::write_row(s, {"variant_last", "variant_first", "canonical_last", "canonical_first"});
    for (const auto& a : kAliases) tsv::write_row(s, {a.variant.last, a.variant.first, a.canonical.last, a.canonical.first});
    out.aliases_tsv = s.str();
  }

  // Manifest.
  std::size_t author_rows = 0, unigram_rows = 0, bigram_rows = 0, language_rows = 0;
  std::int64_t citations_total = 0;
  auto entries = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = papers[i];
    const std::set<std::string> unigrams(p.tokens.begin(), p.tokens.end());
    std::set<std::string> bigrams;
    for (std::size_t t = 1; t < p.tokens.size(); ++t) bigrams.insert(p.tokens[t - 1] + " " + p.tokens[t]);
    auto authors = nlohmann::json::array();
    for (const auto& a : p.authors) authors.push_back({a.last, a.first});
    author_rows += p.authors.size();
    unigram_rows += unigrams.size();
    bigram_rows += bigrams.size();
    language_rows += p.languages.size();
    if (expected_cites[i]) citations_total += *expected_cites[i];
    entries.push_back({{"aa_id", p.aa_id},
                       {"nlps_id", p.key},
                       {"title", p.title},
                       {"year", p.year},
                       {"venue", p.venue.venue},
                       {"paper_type", p.venue.type},
                       {"authors", std::move(authors)},
                       {"aligned", outcome[i] == 1},
                       {"collision", outcome[i] == 2},
                       {"n_citations", expected_cites[i] ? nlohmann::json(*expected_cites[i]) : nlohmann::json()},
                       {"unigrams", unigrams},
                       {"bigrams", bigrams},
                       {"languages", p.languages}});
  }
  out.manifest = {{"config", cfg},
                  {"expected",
                   {{"papers", n},
                    {"rows_read", rows.size()},
                    {"discarded_non_papers", n_front},
                    {"citation_records", citations.size()},
                    {"aligned", n_aligned},
                    {"collisions", n_collide},
                    {"author_rows", author_rows},
                    {"unigram_rows", unigram_rows},
                    {"bigram_rows", bigram_rows},
                    {"language_rows", language_rows},
                    {"citations_total", citations_total}}},
                  {"papers", std::move(entries)}};
  return out;
}

/// Writes papers.tsv, citations.tsv, aliases.tsv and manifest.json.
inline void write_corpus(const GeneratedCorpus& c, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string());
  auto put = [&](std::string_view name, const std::string& content) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw IoError("cannot write " + (dir / name).string());
  };
  put("papers.tsv", c.papers_tsv);
  put("citations.tsv", c.citations_tsv);
  put("aliases.tsv", c.aliases_tsv);
  put("manifest.json", c.manifest.dump(2) + "\n");
}

}  // namespace nlps::fixtures
