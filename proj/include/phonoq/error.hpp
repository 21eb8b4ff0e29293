// Copyright 2026 phonoq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace phonoq {

enum class ErrorKind {
  UnknownSymbol,
  ParseError,
  InvariantViolation,
  FormatError,
  MissingTier,
  LengthMismatch,
  EmptySubset,
  EmptyReference,
  EmptyCorpus,
  EmptyLogits,
  ShapeMismatch,
  NonFiniteGradient,
  ConfigError,
  IoError,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::FormatError: return "FormatError";
    case ErrorKind::MissingTier: return "MissingTier";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::EmptyReference: return "EmptyReference";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::EmptyLogits: return "EmptyLogits";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonFiniteGradient: return "NonFiniteGradient";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

// All library failures surface as one exception type carrying a kind tag,
// so callers can branch on the tag without a type hierarchy.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace phonoq
