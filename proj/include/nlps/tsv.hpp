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

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nlps/errors.hpp"
#include "nlps/text.hpp"

namespace nlps::tsv {

/// Reads a header-led, tab-separated stream. Columns are addressed by the
/// header name so that column order in the file does not matter.
class Reader {
 public:
  Reader(std::istream& in, std::span<const std::string_view> required) : in_(in) {
    std::string header;
    if (!in_.good() || !std::getline(in_, header)) {
      throw IoError("missing header row");
    }
    ++line_no_;
    strip_cr(header);
    // Tolerate a UTF-8 byte order mark.
    if (header.starts_with("\xEF\xBB\xBF")) header.erase(0, 3);
    const auto names = text::split(header, '\t');
    for (const auto& name : names) header_.emplace_back(text::trim(name));
    for (const auto want : required) {
      if (!column(want)) {
        throw IoError("header is missing column '" + std::string(want) + "'");
      }
    }
  }

  std::optional<std::size_t> column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
      if (header_[i] == name) return i;
    }
    return std::nullopt;
  }

  /// Advances to the next non-blank line. Returns false at end of input.
  bool next() {
    while (std::getline(in_, line_)) {
      ++line_no_;
      strip_cr(line_);
      if (text::trim(line_).empty()) continue;
      fields_ = text::split(line_, '\t');
      return true;
    }
    if (in_.bad()) throw IoError("read failure at line " + std::to_string(line_no_));
    return false;
  }

  std::size_t line_number() const noexcept { return line_no_; }
  std::size_t width() const noexcept { return header_.size(); }
  const std::vector<std::string_view>& fields() const noexcept { return fields_; }

  std::string_view field(std::size_t column) const {
    return column < fields_.size() ? fields_[column] : std::string_view{};
  }

 private:
  static void strip_cr(std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  }

  std::istream& in_;
  std::vector<std::string> header_;
  std::string line_;
  std::vector<std::string_view> fields_;
  std::size_t line_no_ = 0;
};

/// Replaces characters that would break the row structure.
inline std::string clean_field(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

inline void write_row(std::ostream& out, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (const auto f : fields) {
    if (!first) out << '\t';
    out << clean_field(f);
    first = false;
  }
  out << '\n';
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  s = text::trim(s);
  Int value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace nlps::tsv
