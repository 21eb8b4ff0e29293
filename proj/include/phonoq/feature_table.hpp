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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "phonoq/default_table.hpp"
#include "phonoq/error.hpp"
#include "phonoq/features.hpp"
#include "phonoq/io.hpp"

namespace phonoq {

inline constexpr std::string_view kSilenceSymbol = "sil";

// Fixed phone-to-feature lookup table shared across languages. Immutable
// after load.
class FeatureTable {
 public:
  FeatureTable() = default;

  const FeatureVector* find(std::string_view symbol) const {
    auto it = entries_.find(std::string(symbol));
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool contains(std::string_view symbol) const {
    return entries_.count(std::string(symbol)) > 0;
  }

  // Exact lookup, no fuzzy matching.
  const FeatureVector& map_phone(std::string_view symbol) const {
    auto it = entries_.find(std::string(symbol));
    if (it == entries_.end())
      throw Error(ErrorKind::UnknownSymbol,
                  "phone '" + std::string(symbol) + "' not in feature table");
    return it->second;
  }

  const std::map<std::string, FeatureVector>& entries() const {
    return entries_;
  }

  const std::string& version() const { return version_; }

  void insert(const std::string& symbol, const FeatureVector& v) {
    validate_entry(symbol, v);
    entries_[symbol] = v;
  }

 private:
  friend FeatureTable parse_table(std::string_view, std::string_view);

  static void validate_entry(const std::string& symbol,
                             const FeatureVector& v) {
    validate(v, "phone '" + symbol + "'");
    if (symbol == kSilenceSymbol && v.manner != Manner::Silence)
      throw Error(ErrorKind::InvariantViolation,
                  "the silence symbol must map to the silence vector");
    if (v.manner == Manner::Silence && symbol != kSilenceSymbol)
      throw Error(ErrorKind::InvariantViolation,
                  "phone '" + symbol + "': only '" +
                      std::string(kSilenceSymbol) + "' may map to silence");
    if (v.manner == Manner::Vowel && v.voicing != Voicing::Voiced)
      throw Error(ErrorKind::InvariantViolation,
                  "phone '" + symbol + "': vowel entries must be voiced");
  }

  std::map<std::string, FeatureVector> entries_;
  std::string version_ = "1";
};

namespace detail {

inline std::optional<std::size_t> class_index(std::string_view cell,
                                              std::size_t offset,
                                              std::size_t size) {
  if (cell == "-") return std::nullopt;
  for (std::size_t k = 0; k < size; ++k)
    if (kDimNames[offset + k] == cell) return k;
  throw Error(ErrorKind::ParseError,
              "unknown class label '" + std::string(cell) + "'");
}

}  // namespace detail

// Parses TSV table text. Lines starting with '#' and blank lines are
// skipped; the first data line must be the canonical header.
inline FeatureTable parse_table(std::string_view text,
                                std::string_view origin = "<string>") {
  FeatureTable table;
  bool saw_header = false;
  std::size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    const std::string where =
        std::string(origin) + ":" + std::to_string(lineno);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string t = trim(line.substr(1));
      if (t.rfind("version=", 0) == 0) table.version_ = t.substr(8);
      continue;
    }
    const auto cells = split(line, '\t');
    if (!saw_header) {
      if (cells != std::vector<std::string>{"phone", "manner", "height",
                                            "backness", "place", "voicing"})
        throw Error(ErrorKind::ParseError, where + ": bad header row");
      saw_header = true;
      continue;
    }
    if (cells.size() != 6)
      throw Error(ErrorKind::ParseError,
                  where + ": expected 6 tab-separated cells, got " +
                      std::to_string(cells.size()));
    const std::string& symbol = cells[0];
    if (symbol.empty())
      throw Error(ErrorKind::ParseError, where + ": empty phone symbol");
    if (table.contains(symbol))
      throw Error(ErrorKind::ParseError,
                  where + ": duplicate phone '" + symbol + "'");
    FeatureVector v;
    try {
      const auto manner =
          detail::class_index(cells[1], kMannerOffset, kMannerSize);
      if (!manner)
        throw Error(ErrorKind::ParseError, "manner cell cannot be '-'");
      v.manner = static_cast<Manner>(*manner);
      if (auto h = detail::class_index(cells[2], kHeightOffset, kHeightSize))
        v.height = static_cast<Height>(*h);
      if (auto b =
              detail::class_index(cells[3], kBacknessOffset, kBacknessSize))
        v.backness = static_cast<Backness>(*b);
      if (auto p = detail::class_index(cells[4], kPlaceOffset, kPlaceSize))
        v.place = static_cast<Place>(*p);
      if (auto w =
              detail::class_index(cells[5], kVoicingOffset, kVoicingSize))
        v.voicing = static_cast<Voicing>(*w);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError)
        throw Error(ErrorKind::ParseError, where + ": " + e.what());
      throw;
    }
    try {
      table.insert(symbol, v);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvariantViolation, where + ": " + e.what());
    }
  }
  if (!saw_header)
    throw Error(ErrorKind::ParseError,
                std::string(origin) + ": missing header row");
  if (!table.contains(kSilenceSymbol))
    throw Error(ErrorKind::InvariantViolation,
                std::string(origin) + ": table lacks the silence symbol");
  return table;
}

inline FeatureTable load_table(const std::filesystem::path& path) {
  return parse_table(read_file(path), path.string());
}

inline const FeatureTable& default_table() {
  static const FeatureTable table =
      parse_table(default_feature_table_tsv(), "<builtin>");
  return table;
}

}  // namespace phonoq
