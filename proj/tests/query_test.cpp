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
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "nlps/query.hpp"
#include "support/oracle.hpp"

namespace {

using Set = std::set<std::string>;

nlps::PaperRecord paper(const std::string& title, int year, std::vector<nlps::AuthorName> authors) {
  nlps::PaperRecord p;
  p.title = title;
  p.year = year;
  p.venue = "ACL";
  p.paper_type = nlps::PaperType::main_conference;
  p.authors = std::move(authors);
  p.aa_id = "aa-" + title;
  p.nlps_id = nlps::build_alignment_key(title, year, p.authors.front().last);
  return p;
}

class Fixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    generated_ = new nlps::fixtures::GeneratedCorpus(nlps::fixtures::generate_corpus({.seed = 17, .n_papers = 200}));
    snapshot_ = oracle::build(*generated_).snapshot;
    corpus_ = new oracle::Corpus(oracle::from_manifest(generated_->manifest));
  }
  static void TearDownTestSuite() {
    delete generated_;
    delete corpus_;
    snapshot_.reset();
  }
  static inline nlps::fixtures::GeneratedCorpus* generated_ = nullptr;
  static inline std::shared_ptr<const nlps::Snapshot> snapshot_;
  static inline oracle::Corpus* corpus_ = nullptr;
};

TEST(TermsMatch, Examples) {
  EXPECT_TRUE(nlps::terms_match({"sentiment", "analysis"}, {"sentiment", "emotion"}));
  EXPECT_FALSE(nlps::terms_match({"emotions"}, {"emotion"}));
  EXPECT_FALSE(nlps::terms_match({}, {"x", "y"}));
}

TEST(AuthorMatch, Examples) {
  const auto p = paper("T", 2001, {{"Christopher", "Manning", "Manning, Christopher"}});
  EXPECT_TRUE(nlps::author_match(p, {"manning", std::nullopt}));
  EXPECT_TRUE(nlps::author_match(p, {"MANNING", "christopher"}));
  EXPECT_FALSE(nlps::author_match(p, {"manning", "chris"}));
  EXPECT_FALSE(nlps::author_match(p, {"mann", std::nullopt}));
}

TEST(ApplyFilter, SingleSentimentPaperIn2002) {
  const std::vector<nlps::PaperRecord> papers{
      paper("Sentiment Analysis of Tweets", 2002, {{"A", "Lee", ""}}),
      paper("Sentiment Lexicons", 2003, {{"B", "Kim", ""}}),
      paper("Parsing News", 2002, {{"C", "Ng", ""}}),
  };
  const auto s = nlps::build_tables(papers, {}, {});
  nlps::FilterSpec spec;
  spec.title_terms = Set{"sentiment"};
  spec.year_range = std::pair{2002, 2002};
  EXPECT_EQ(nlps::apply_filter(s, spec), (Set{papers[0].nlps_id}));
}

TEST_F(Fixture, EmptySpecReturnsEverything) {
  EXPECT_EQ(nlps::apply_filter(*snapshot_, {}).size(), snapshot_->size());
}

TEST_F(Fixture, ExclusionOverridesMatch) {
  const auto& target = snapshot_->papers()[7];
  nlps::FilterSpec spec;
  spec.years_clicked = std::set<int>{target.year};
  spec.excluded_ids = {target.nlps_id};
  EXPECT_EQ(nlps::apply_filter(*snapshot_, spec).count(target.nlps_id), 0u);
}

TEST_F(Fixture, AuthorSweepMatchesLinearScan) {
  std::set<std::string> lasts;
  for (const auto& p : corpus_->papers) {
    for (const auto& a : p.authors) lasts.insert(a.first);
  }
  for (const auto& last : lasts) {
    nlps::FilterSpec spec;
    spec.author_query = nlps::AuthorQuery{oracle::ascii_lower(last), std::nullopt};
    EXPECT_EQ(nlps::apply_filter(*snapshot_, spec), oracle::brute_filter(*corpus_, spec)) << last;
  }
}

TEST_F(Fixture, RandomSpecsMatchOracle) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const auto spec = oracle::random_spec(rng, *corpus_);
    ASSERT_EQ(nlps::apply_filter(*snapshot_, spec), oracle::brute_filter(*corpus_, spec))
        << nlohmann::json(spec).dump();
  }
}

TEST_F(Fixture, Monotonicity) {
  std::mt19937_64 rng(43);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const auto spec = oracle::random_spec(rng, *corpus_);
    const int which = std::uniform_int_distribution<int>(0, oracle::kFacetKinds - 1)(rng);
    if (oracle::has_facet(spec, which)) continue;
    auto narrowed = spec;
    oracle::add_random_facet(rng, *corpus_, narrowed, which);
    const auto before = nlps::apply_filter(*snapshot_, spec);
    const auto after = nlps::apply_filter(*snapshot_, narrowed);
    EXPECT_TRUE(std::includes(before.begin(), before.end(), after.begin(), after.end()));
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST_F(Fixture, ConjunctionDecomposes) {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 200; ++i) {
    nlps::FilterSpec a, b;
    oracle::add_random_facet(rng, *corpus_, a, std::uniform_int_distribution<int>(0, 7)(rng));
    oracle::add_random_facet(rng, *corpus_, b, std::uniform_int_distribution<int>(0, 7)(rng));
    auto both = a;
    if (b.year_range) both.year_range = b.year_range;
    if (b.years_clicked) both.years_clicked = b.years_clicked;
    if (b.venues) both.venues = b.venues;
    if (b.paper_types) both.paper_types = b.paper_types;
    if (b.author_query) both.author_query = b.author_query;
    if (b.title_terms) both.title_terms = b.title_terms;
    if (b.title_bigram) both.title_bigram = b.title_bigram;
    if (b.language) both.language = b.language;
    const bool overlap = (a.year_range && b.year_range) || (a.years_clicked && b.years_clicked) ||
                         (a.venues && b.venues) || (a.paper_types && b.paper_types) ||
                         (a.author_query && b.author_query) || (a.title_terms && b.title_terms) ||
                         (a.title_bigram && b.title_bigram) || (a.language && b.language);
    if (overlap) continue;
    const auto ra = nlps::apply_filter(*snapshot_, a);
    const auto rb = nlps::apply_filter(*snapshot_, b);
    Set expected;
    std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::inserter(expected, expected.end()));
    EXPECT_EQ(nlps::apply_filter(*snapshot_, both), expected);
  }
}

TEST_F(Fixture, TermSetIsUnionOfSingletons) {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 100; ++i) {
    nlps::FilterSpec spec;
    oracle::add_random_facet(rng, *corpus_, spec, 5);
    Set expected;
    for (const auto& t : *spec.title_terms) {
      nlps::FilterSpec one;
      one.title_terms = Set{t};
      const auto r = nlps::apply_filter(*snapshot_, one);
      expected.insert(r.begin(), r.end());
    }
    EXPECT_EQ(nlps::apply_filter(*snapshot_, spec), expected);
  }
}

TEST(SpecJson, RoundTrip) {
  nlps::FilterSpec s;
  s.year_range = std::pair{2001, 2005};
  s.years_clicked = std::set<int>{2003};
  s.venues = Set{"ACL"};
  s.paper_types = std::set<nlps::PaperType>{nlps::PaperType::workshop};
  s.author_query = nlps::AuthorQuery{"Manning", "Christopher"};
  s.title_terms = Set{"emotion", "sentiment"};
  s.title_bigram = "machine translation";
  s.language = "swahili";
  s.excluded_ids = {"x|2001|y"};
  EXPECT_EQ(nlps::filter_spec_from_json(nlohmann::json(s)), s);
}

TEST(SpecJson, Canonicalization) {
  const auto s = nlps::parse_filter_spec(
      R"({"title_terms": ["Sentiment, Emotion"], "title_bigram": "Machine  Translation",
          "venues": [], "author_query": "Manning, Chris", "language": "Haitian Creole"})");
  EXPECT_EQ(s.title_terms, (Set{"emotion", "sentiment"}));
  EXPECT_EQ(s.title_bigram, "machine translation");
  EXPECT_FALSE(s.venues.has_value());
  EXPECT_EQ(s.author_query, (nlps::AuthorQuery{"Manning", "Chris"}));
  EXPECT_EQ(s.language, "haitian creole");
  EXPECT_EQ(nlps::parse_filter_spec(""), nlps::FilterSpec{});
  EXPECT_EQ(nlps::parse_filter_spec("{}"), nlps::FilterSpec{});
}

TEST(SpecJson, ErrorsNameTheField) {
  auto field_of = [](const std::string& body) {
    try {
      (void)nlps::parse_filter_spec(body);
    } catch (const nlps::SpecError& e) {
      return e.field();
    }
    return std::string("<no error>");
  };
  EXPECT_EQ(field_of(R"({"year_range": [2005, 2001]})"), "year_range");
  EXPECT_EQ(field_of(R"({"year_range": [2005]})"), "year_range");
  EXPECT_EQ(field_of(R"({"years_clicked": ["x"]})"), "years_clicked");
  EXPECT_EQ(field_of(R"({"paper_types": ["poster"]})"), "paper_types");
  EXPECT_EQ(field_of(R"({"title_bigram": "one"})"), "title_bigram");
  EXPECT_EQ(field_of(R"({"bogus": 1})"), "bogus");
  EXPECT_EQ(field_of(R"({"author_query": {"first": "x"}})"), "author_query.last");
  EXPECT_EQ(field_of("[1,2]"), "");
  EXPECT_EQ(field_of("{not json"), "");
}

}  // namespace
