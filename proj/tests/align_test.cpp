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

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nlps/align.hpp"

namespace {

nlps::PaperRecord paper(const std::string& title, int year, const std::string& last) {
  nlps::PaperRecord p;
  p.aa_id = "X-" + title;
  p.title = title;
  p.year = year;
  p.authors = {{"A", last, last + ", A"}};
  p.nlps_id = nlps::build_alignment_key(title, year, last);
  return p;
}

TEST(Align, ExactMatch) {
  const std::vector<nlps::CitationRecord> cites{{"Some Title", 2001, "Lee", 12}};
  const auto r = nlps::align({paper("Some Title", 2001, "Lee")}, cites);
  ASSERT_EQ(r.papers.size(), 1u);
  EXPECT_EQ(r.papers[0].n_citations, 12);
  EXPECT_EQ(r.stats.n_aligned, 1u);
  EXPECT_DOUBLE_EQ(r.stats.coverage, 1.0);
}

TEST(Align, YearOffByOne) {
  const std::vector<nlps::CitationRecord> cites{{"Some Title", 2002, "Lee", 12}};
  const auto r = nlps::align({paper("Some Title", 2001, "Lee")}, cites);
  EXPECT_FALSE(r.papers[0].n_citations.has_value());
  EXPECT_DOUBLE_EQ(r.stats.coverage, 0.0);
}

TEST(Align, IdenticalDuplicateRecordsStillCollide) {
  const std::vector<nlps::CitationRecord> cites{{"Some Title", 2001, "Lee", 12}, {"SOME TITLE.", 2001, "LEE", 12}};
  const auto r = nlps::align({paper("Some Title", 2001, "Lee")}, cites);
  EXPECT_FALSE(r.papers[0].n_citations.has_value());
  EXPECT_EQ(r.stats.collisions, 1u);
  EXPECT_EQ(r.stats.n_aligned, 0u);
}

struct Scenario {
  std::vector<nlps::PaperRecord> papers;
  std::vector<nlps::CitationRecord> cites;
};

// 200 papers: 150 with one matching record, 10 with two, 40 with only a
// near miss. Citation titles vary in case and punctuation.
Scenario scenario(std::mt19937_64& rng) {
  Scenario s;
  for (int i = 0; i < 200; ++i) {
    const auto title = "Study Number " + std::to_string(i) + " of Things";
    const int year = 1990 + i % 30;
    const auto last = "Author" + std::to_string(i % 17);
    s.papers.push_back(paper(title, year, last));
    if (i < 150) {
      s.cites.push_back({"STUDY number " + std::to_string(i) + " of things!", year, last, i});
    } else if (i < 160) {
      s.cites.push_back({title, year, last, 1});
      s.cites.push_back({title + ".", year, last, 2});
    } else {
      s.cites.push_back({title, year + 1, last, 3});
    }
  }
  s.cites.push_back({"Unrelated", 2000, "Nobody", 5});
  std::shuffle(s.cites.begin(), s.cites.end(), rng);
  return s;
}

// Independent oracle: group both sides by key with a std::map and count.
nlps::AlignmentStats brute_stats(const Scenario& s) {
  std::map<std::string, std::pair<int, int>> groups;
  for (const auto& p : s.papers) ++groups[nlps::build_alignment_key(p.title, p.year, p.authors[0].last)].first;
  for (const auto& c : s.cites) {
    const auto k = nlps::build_alignment_key(c.title, c.year, c.first_author_last);
    if (groups.count(k)) ++groups[k].second;
  }
  nlps::AlignmentStats st;
  st.n_anthology = s.papers.size();
  st.n_citation_records = s.cites.size();
  for (const auto& [k, g] : groups) {
    if (g.first == 1 && g.second == 1) ++st.n_aligned;
    if (g.first > 1 || g.second > 1) ++st.collisions;
  }
  st.coverage = static_cast<double>(st.n_aligned) / static_cast<double>(st.n_anthology);
  return st;
}

TEST(Align, SyntheticCorpusMatchesKeyGroupOracle) {
  std::mt19937_64 rng(5);
  const auto s = scenario(rng);
  const auto r = nlps::align(s.papers, s.cites);
  EXPECT_EQ(r.stats.n_aligned, 150u);
  EXPECT_EQ(r.stats.collisions, 10u);
  EXPECT_EQ(r.stats, brute_stats(s));
  for (std::size_t i = 0; i < r.papers.size(); ++i) {
    if (i < 150) {
      EXPECT_EQ(r.papers[i].n_citations, static_cast<std::int64_t>(i));
    } else {
      EXPECT_FALSE(r.papers[i].n_citations.has_value());
    }
  }
}

TEST(Align, PermutationInvariant) {
  std::mt19937_64 rng(6);
  auto s = scenario(rng);
  const auto base = nlps::align(s.papers, s.cites);
  for (int round = 0; round < 5; ++round) {
    std::shuffle(s.cites.begin(), s.cites.end(), rng);
    std::shuffle(s.papers.begin(), s.papers.end(), rng);
    const auto r = nlps::align(s.papers, s.cites);
    EXPECT_EQ(r.stats, base.stats);
    std::map<std::string, std::optional<std::int64_t>> a, b;
    for (const auto& p : base.papers) a[p.nlps_id] = p.n_citations;
    for (const auto& p : r.papers) b[p.nlps_id] = p.n_citations;
    EXPECT_EQ(a, b);
  }
}

TEST(Align, InvariantsHold) {
  std::mt19937_64 rng(8);
  const auto s = scenario(rng);
  const auto st = nlps::align(s.papers, s.cites).stats;
  EXPECT_LE(st.n_aligned, std::min(st.n_anthology, st.n_citation_records));
  EXPECT_GE(st.coverage, 0.0);
  EXPECT_LE(st.coverage, 1.0);
}

TEST(CoverageReport, HeadlineCounts) {
  nlps::AlignmentStats st;
  st.n_anthology = 44895;
  st.n_aligned = 32985;
  EXPECT_NE(nlps::alignment_report(st).find("(73%)"), std::string::npos);
}

TEST(CoverageReport, Full) {
  nlps::AlignmentStats st{10, 10, 10, 1.0, 0};
  EXPECT_NE(nlps::alignment_report(st).find("(100%)"), std::string::npos);
}

TEST(CoverageReport, MatchesRecomputedRatio) {
  std::mt19937_64 rng(9);
  const auto s = scenario(rng);
  const auto st = nlps::align(s.papers, s.cites).stats;
  const auto pct = static_cast<std::size_t>(std::lround(100.0 * 150.0 / 200.0));
  EXPECT_EQ(nlps::coverage_percent(st), pct);
  EXPECT_NE(nlps::alignment_report(st).find("(" + std::to_string(pct) + "%)"), std::string::npos);
}

TEST(ParseCitations, ReportsMalformedRows) {
  std::istringstream in(
      "title\tyear\tfirst_author_last\tn_citations\n"
      "Good\t2001\tLee\t4\n"
      "Bad count\t2001\tLee\t-1\n"
      "Bad year\tyy\tLee\t1\n"
      "!!\t2001\tLee\t1\n");
  const auto r = nlps::parse_citations(in);
  EXPECT_EQ(r.total_read, 4u);
  EXPECT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.parse_errors.size(), 3u);
}

}  // namespace
