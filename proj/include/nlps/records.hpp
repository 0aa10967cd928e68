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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace nlps {

// front_matter only exists between parsing and non-paper filtering; no kept
// record carries it.
enum class PaperType { journal, main_conference, workshop, demo, shared_task, tutorial, other, front_matter };

inline constexpr std::array<std::pair<PaperType, std::string_view>, 8> kPaperTypeNames{{
    {PaperType::journal, "journal"},
    {PaperType::main_conference, "main-conference"},
    {PaperType::workshop, "workshop"},
    {PaperType::demo, "demo"},
    {PaperType::shared_task, "shared-task"},
    {PaperType::tutorial, "tutorial"},
    {PaperType::other, "other"},
    {PaperType::front_matter, "front-matter"},
}};

inline std::string_view to_string(PaperType t) {
  for (const auto& [type, name] : kPaperTypeNames) {
    if (type == t) return name;
  }
  return "other";
}

inline std::optional<PaperType> paper_type_from_string(std::string_view s) {
  for (const auto& [type, name] : kPaperTypeNames) {
    if (name == s) return type;
  }
  return std::nullopt;
}

struct AuthorName {
  std::string first;
  std::string last;
  std::string canonical;

  bool operator==(const AuthorName&) const = default;
};

struct PaperRecord {
  std::string nlps_id;
  std::string aa_id;
  std::string title;
  int year = 0;
  std::string venue;
  PaperType paper_type = PaperType::other;
  std::vector<AuthorName> authors;
  std::optional<std::int64_t> n_citations;

  bool operator==(const PaperRecord&) const = default;
};

struct CitationRecord {
  std::string title;
  int year = 0;
  std::string first_author_last;
  std::int64_t n_citations = 0;

  bool operator==(const CitationRecord&) const = default;
};

struct ParseError {
  std::size_t line = 0;
  std::string message;

  bool operator==(const ParseError&) const = default;
};

struct IngestReport {
  std::size_t total_read = 0;
  std::size_t kept = 0;
  std::size_t discarded_non_papers = 0;
  std::vector<ParseError> parse_errors;
};

struct AlignmentStats {
  std::size_t n_anthology = 0;
  std::size_t n_citation_records = 0;
  std::size_t n_aligned = 0;
  double coverage = 0.0;
  std::size_t collisions = 0;

  bool operator==(const AlignmentStats&) const = default;
};

inline void to_json(nlohmann::json& j, const ParseError& e) {
  j = nlohmann::json{{"line", e.line}, {"message", e.message}};
}

inline void to_json(nlohmann::json& j, const IngestReport& r) {
  j = nlohmann::json{{"total_read", r.total_read},
                     {"kept", r.kept},
                     {"discarded_non_papers", r.discarded_non_papers},
                     {"parse_errors", r.parse_errors}};
}

inline void to_json(nlohmann::json& j, const AlignmentStats& s) {
  j = nlohmann::json{{"n_anthology", s.n_anthology},
                     {"n_citation_records", s.n_citation_records},
                     {"n_aligned", s.n_aligned},
                     {"coverage", s.coverage},
                     {"collisions", s.collisions}};
}

inline void from_json(const nlohmann::json& j, AlignmentStats& s) {
  j.at("n_anthology").get_to(s.n_anthology);
  j.at("n_citation_records").get_to(s.n_citation_records);
  j.at("n_aligned").get_to(s.n_aligned);
  j.at("coverage").get_to(s.coverage);
  j.at("collisions").get_to(s.collisions);
}

}  // namespace nlps
