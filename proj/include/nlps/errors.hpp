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

#include <stdexcept>
#include <string>

namespace nlps {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single value failed validation (empty last name, bad year, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input could not be read at all.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Tables could not be materialized (duplicate ids, broken references).
class BuildError : public Error {
 public:
  using Error::Error;
};

/// A FilterSpec document was rejected; `field` names the offending member.
class SpecError : public Error {
 public:
  SpecError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace nlps
