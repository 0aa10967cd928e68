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

#include <string>
#include <string_view>
#include <vector>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "nlps/errors.hpp"

namespace nlps::text {

namespace detail {

inline icu::UnicodeString from_utf8(std::string_view s) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

inline std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

inline const icu::Normalizer2& normalizer(bool compatibility) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = compatibility ? icu::Normalizer2::getNFKDInstance(status)
                                            : icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw Error("ICU normalizer unavailable");
  }
  return *n;
}

inline bool is_mark(UChar32 c) {
  const auto type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK || type == U_ENCLOSING_MARK;
}

}  // namespace detail

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += sep;
    out += parts[i];
  }
  return out;
}

/// Unicode-aware lowercase (root locale).
inline std::string to_lower(std::string_view s) {
  auto u = detail::from_utf8(s);
  u.toLower(icu::Locale::getRoot());
  return detail::to_utf8(u);
}

inline bool iequals(std::string_view a, std::string_view b) { return to_lower(a) == to_lower(b); }

/// Canonical comparison form for titles and names: lowercase, compatibility
/// decomposed with combining marks dropped, every character that is not a
/// letter or digit turned into a space, whitespace collapsed and trimmed.
/// Idempotent.
inline std::string normalize_title(std::string_view title) {
  auto u = detail::from_utf8(title);
  u.toLower(icu::Locale::getRoot());
  UErrorCode status = U_ZERO_ERROR;
  const auto decomposed = detail::normalizer(true).normalize(u, status);
  if (U_FAILURE(status)) throw Error("unicode normalization failed");

  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < decomposed.length();) {
    const UChar32 c = decomposed.char32At(i);
    i += U16_LENGTH(c);
    if (detail::is_mark(c)) continue;
    if (u_isalnum(c)) {
      if (pending_space && !out.isEmpty()) out.append(static_cast<UChar>(u' '));
      pending_space = false;
      out.append(c);
    } else {
      pending_space = true;
    }
  }
  return detail::to_utf8(out);
}

/// Splits a title into lowercase tokens. A token is a maximal run of letters
/// and digits; a hyphen joins two runs only when it sits between them.
/// Order and duplicates are preserved.
inline std::vector<std::string> tokenize_title(std::string_view title) {
  auto u = detail::from_utf8(title);
  UErrorCode status = U_ZERO_ERROR;
  u = detail::normalizer(false).normalize(u, status);
  if (U_FAILURE(status)) throw Error("unicode normalization failed");
  u.toLower(icu::Locale::getRoot());

  std::vector<UChar32> cps;
  cps.reserve(static_cast<std::size_t>(u.length()));
  for (int32_t i = 0; i < u.length();) {
    const UChar32 c = u.char32At(i);
    i += U16_LENGTH(c);
    cps.push_back(c);
  }

  std::vector<std::string> tokens;
  icu::UnicodeString current;
  auto flush = [&] {
    if (!current.isEmpty()) tokens.push_back(detail::to_utf8(current));
    current.remove();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const UChar32 c = cps[i];
    if (u_isalnum(c)) {
      current.append(c);
    } else if (detail::is_mark(c) && !current.isEmpty()) {
      current.append(c);
    } else if (c == U'-' && !current.isEmpty() && i + 1 < cps.size() && u_isalnum(cps[i + 1])) {
      current.append(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

}  // namespace nlps::text
