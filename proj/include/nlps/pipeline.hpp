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

#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlps/align.hpp"
#include "nlps/errors.hpp"
#include "nlps/ingest.hpp"
#include "nlps/store.hpp"

namespace nlps {

struct BuildOutcome {
  std::shared_ptr<const Snapshot> snapshot;
  IngestReport ingest;
  std::size_t citations_read = 0;
  std::vector<ParseError> citation_errors;
  AlignmentStats stats;
};

inline void to_json(nlohmann::json& j, const BuildOutcome& b) {
  j = nlohmann::json{{"ingest", b.ingest},
                     {"citations", {{"total_read", b.citations_read}, {"parse_errors", b.citation_errors}}},
                     {"alignment", b.stats}};
}

/// ingest -> filter -> align -> tables, all in memory.
inline BuildOutcome build_corpus(std::istream& papers, std::istream& citations, const AliasTable& aliases,
                                 const LanguageLexicon& lexicon, int max_year = current_year()) {
  auto ingested = ingest_anthology(papers, aliases, max_year);
  auto cites = parse_citations(citations);
  auto aligned = align(std::move(ingested.records), cites.records);
  BuildOutcome out;
  out.ingest = std::move(ingested.report);
  out.citations_read = cites.total_read;
  out.citation_errors = std::move(cites.parse_errors);
  out.stats = aligned.stats;
  out.snapshot = std::make_shared<const Snapshot>(build_tables(std::move(aligned.papers), lexicon, aligned.stats));
  return out;
}

struct BuildPaths {
  std::filesystem::path papers;
  std::filesystem::path citations;
  std::optional<std::filesystem::path> aliases;
};

inline BuildOutcome build_from_files(const BuildPaths& paths, const LanguageLexicon& lexicon) {
  auto open = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open " + p.string());
    return in;
  };
  auto papers = open(paths.papers);
  auto citations = open(paths.citations);
  AliasTable aliases;
  if (paths.aliases) {
    auto in = open(*paths.aliases);
    aliases = AliasTable::from_tsv(in);
  }
  return build_corpus(papers, citations, aliases, lexicon);
}

/// A data directory holds papers.tsv, citations.tsv and optionally
/// aliases.tsv.
inline BuildPaths input_paths(const std::filesystem::path& dir) {
  BuildPaths p{dir / "papers.tsv", dir / "citations.tsv", std::nullopt};
  if (std::filesystem::exists(dir / "aliases.tsv")) p.aliases = dir / "aliases.tsv";
  return p;
}

}  // namespace nlps
