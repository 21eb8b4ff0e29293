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

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "phonoq/error.hpp"
#include "phonoq/feature_table.hpp"
#include "phonoq/io.hpp"
#include "phonoq/utf8.hpp"

namespace phonoq {

enum class Lang : std::uint8_t { De, En, Es, Cs, Fr, It, Ru, Generic };

inline constexpr std::array<std::string_view, 8> kLangCodes = {
    "de", "en", "es", "cs", "fr", "it", "ru", "generic"};

inline Lang parse_lang(std::string_view code) {
  for (std::size_t k = 0; k < kLangCodes.size(); ++k)
    if (kLangCodes[k] == code) return static_cast<Lang>(k);
  throw Error(ErrorKind::ParseError,
              "unknown language tag '" + std::string(code) + "'");
}

inline std::string_view lang_code(Lang lang) {
  return kLangCodes[static_cast<std::size_t>(lang)];
}

// Diacritics recognized by the phone parser. The first seven cover the
// suprasegmental and ligature normalization; palatalization, non-syllabic
// and raised are needed for the Russian and Czech MFA inventories.
enum class Modifier : std::uint8_t {
  Aspiration,
  Syllabic,
  Length,
  Stress,
  Nasalization,
  Rhoticity,
  TieBar,
  Palatalization,
  NonSyllabic,
  Raised,
};

// A raw phone label decomposed into base symbol(s) plus diacritic codes.
// assemble() re-concatenates them in canonical order, reproducing a
// normalized form of the input.
struct ParsedPhone {
  std::string base;
  std::set<Modifier> modifiers;

  bool has(Modifier m) const { return modifiers.count(m) > 0; }

  std::string assemble() const {
    std::string out;
    if (has(Modifier::Stress)) utf8_append(out, 0x02C8);
    const auto cps = utf8_decode(base);
    for (std::size_t i = 0; i < cps.size(); ++i) {
      if (i > 0 && has(Modifier::TieBar)) utf8_append(out, 0x0361);
      utf8_append(out, cps[i]);
    }
    if (has(Modifier::Raised)) utf8_append(out, 0x031D);
    if (has(Modifier::NonSyllabic)) utf8_append(out, 0x032F);
    if (has(Modifier::Nasalization)) utf8_append(out, 0x0303);
    if (has(Modifier::Syllabic)) utf8_append(out, 0x0329);
    if (has(Modifier::Palatalization)) utf8_append(out, 0x02B2);
    if (has(Modifier::Aspiration)) utf8_append(out, 0x02B0);
    if (has(Modifier::Rhoticity)) utf8_append(out, 0x02DE);
    if (has(Modifier::Length)) utf8_append(out, 0x02D0);
    return out;
  }

  friend bool operator==(const ParsedPhone&, const ParsedPhone&) = default;
};

namespace detail {

inline bool is_base_codepoint(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return true;
  switch (cp) {
    case 0x00E6:  // æ
    case 0x00E7:  // ç
    case 0x00F0:  // ð
    case 0x00F8:  // ø
    case 0x0153:  // œ
    case 0x014B:  // ŋ
    case 0x03B2:  // β
    case 0x03B8:  // θ
    case 0x03C7:  // χ
      return true;
    default:
      break;
  }
  if (cp < 0x0250 || cp > 0x02A2) return false;
  // IPA extensions block, minus clicks and symbols outside our inventory.
  switch (cp) {
    case 0x025A:  // ɚ handled as a precomposed special
    case 0x025D:  // ɝ handled as a precomposed special
    case 0x0261:  // ɡ rewritten to ASCII g
    case 0x0277:
    case 0x027C:
    case 0x027F:
    case 0x0285:
    case 0x0286:
    case 0x0287:
    case 0x0293:
    case 0x0296:
    case 0x0297:
    case 0x0298:  // ʘ click
    case 0x029A:
    case 0x029E:
    case 0x02A0:
      return false;
    default:
      return true;
  }
}

struct Special {
  const char* base;
  Modifier modifier;
};

// Precomposed code points that carry a diacritic of their own.
inline const std::map<char32_t, Special>& precomposed_specials() {
  static const std::map<char32_t, Special> m = {
      {0x025A, {"ə", Modifier::Rhoticity}},      // ɚ = ə + hook
      {0x025D, {"ɜ", Modifier::Rhoticity}},      // ɝ = ɜ + hook
      {0x00E3, {"a", Modifier::Nasalization}},        // ã
      {0x1EBD, {"e", Modifier::Nasalization}},        // ẽ
      {0x0129, {"i", Modifier::Nasalization}},        // ĩ
      {0x00F5, {"o", Modifier::Nasalization}},        // õ
      {0x0169, {"u", Modifier::Nasalization}},        // ũ
      {0x1EF9, {"y", Modifier::Nasalization}},        // ỹ
  };
  return m;
}

// Single-character affricate ligatures become two base characters + tie.
inline const std::map<char32_t, const char*>& affricate_ligatures() {
  static const std::map<char32_t, const char*> m = {
      {0x02A3, "dz"},
      {0x02A4, "dʒ"},  // ʤ → dʒ
      {0x02A6, "ts"},
      {0x02A7, "tʃ"},  // ʧ → tʃ
  };
  return m;
}

}  // namespace detail

// Decomposes a raw MFA phone label. Unrecognized code points are hard
// errors; nothing is dropped silently.
inline ParsedPhone parse_phone(std::string_view label) {
  const std::string trimmed = trim(label);
  if (trimmed.empty())
    throw Error(ErrorKind::ParseError, "empty phone label");
  ParsedPhone phone;
  for (char32_t cp : utf8_decode(trimmed)) {
    switch (cp) {
      case 0x02C8:
      case 0x02CC:
        phone.modifiers.insert(Modifier::Stress);
        continue;
      case 0x02D0:
      case 0x02D1:
        phone.modifiers.insert(Modifier::Length);
        continue;
      case 0x02B0:
        phone.modifiers.insert(Modifier::Aspiration);
        continue;
      case 0x02B2:
        phone.modifiers.insert(Modifier::Palatalization);
        continue;
      case 0x02DE:
        phone.modifiers.insert(Modifier::Rhoticity);
        continue;
      case 0x0303:
        phone.modifiers.insert(Modifier::Nasalization);
        continue;
      case 0x0329:
      case 0x030D:
        phone.modifiers.insert(Modifier::Syllabic);
        continue;
      case 0x0361:
      case 0x035C:
        phone.modifiers.insert(Modifier::TieBar);
        continue;
      case 0x032F:
        phone.modifiers.insert(Modifier::NonSyllabic);
        continue;
      case 0x031D:
        phone.modifiers.insert(Modifier::Raised);
        continue;
      case 0x0327:  // combining cedilla: recompose c + cedilla to ç
        if (!phone.base.empty() && phone.base.back() == 'c') {
          phone.base.pop_back();
          utf8_append(phone.base, 0x00E7);
          continue;
        }
        throw Error(ErrorKind::UnknownSymbol,
                    "combining cedilla without 'c' in '" + trimmed + "'");
      case 0x0261:  // ɡ → g
        phone.base.push_back('g');
        continue;
      default:
        break;
    }
    if (auto it = detail::precomposed_specials().find(cp);
        it != detail::precomposed_specials().end()) {
      phone.base += it->second.base;
      phone.modifiers.insert(it->second.modifier);
      continue;
    }
    if (auto it = detail::affricate_ligatures().find(cp);
        it != detail::affricate_ligatures().end()) {
      phone.base += it->second;
      phone.modifiers.insert(Modifier::TieBar);
      continue;
    }
    if (detail::is_base_codepoint(cp)) {
      utf8_append(phone.base, cp);
      continue;
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(cp));
    throw Error(ErrorKind::UnknownSymbol,
                std::string("unrecognized code point ") + buf + " in '" +
                    trimmed + "'");
  }
  if (phone.base.empty())
    throw Error(ErrorKind::UnknownSymbol,
                "label '" + trimmed + "' has no base symbol");
  return phone;
}

// An IPA phone after language-aware normalization; symbol is a feature
// table key or the silence symbol.
struct CanonicalPhone {
  std::string symbol;
  Lang source_lang = Lang::Generic;

  bool is_silence() const { return symbol == kSilenceSymbol; }

  friend bool operator==(const CanonicalPhone&, const CanonicalPhone&) =
      default;
};

inline bool is_silence_alias(std::string_view label) {
  return label.empty() || label == "sil" || label == "sp" || label == "spn" ||
         label == "<sil>";
}

// Optional user rules: lang<TAB>from<TAB>to, applied to the canonicalized
// symbol after the compiled-in rules ("*" matches every language).
class OverrideRules {
 public:
  OverrideRules() = default;

  static OverrideRules parse(std::string_view text,
                             std::string_view origin = "<string>") {
    OverrideRules rules;
    std::size_t lineno = 0;
    for (const std::string& line : split_lines(text)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      const auto cells = split(line, '\t');
      if (cells.size() != 3)
        throw Error(ErrorKind::ParseError,
                    std::string(origin) + ":" + std::to_string(lineno) +
                        ": expected lang<TAB>from<TAB>to");
      if (cells[0] != "*") parse_lang(cells[0]);  // reject unknown tags
      rules.map_[cells[0] + "\t" + cells[1]] = cells[2];
    }
    return rules;
  }

  static OverrideRules load(const std::filesystem::path& path) {
    return parse(read_file(path), path.string());
  }

  const std::string* lookup(Lang lang, const std::string& symbol) const {
    auto it = map_.find(std::string(lang_code(lang)) + "\t" + symbol);
    if (it != map_.end()) return &it->second;
    it = map_.find("*\t" + symbol);
    return it == map_.end() ? nullptr : &it->second;
  }

  bool empty() const { return map_.empty(); }

 private:
  std::map<std::string, std::string> map_;
};

// Applies the normalization rules: universal first (strip stress, length,
// nasalization and the non-syllabic mark; fuse tie-bar affricates), then
// the language-specific steps, then user overrides. The result must be a
// feature table key or silence.
inline CanonicalPhone canonicalize(const ParsedPhone& phone, Lang lang,
                                   const FeatureTable& table,
                                   const OverrideRules* overrides = nullptr) {
  ParsedPhone p = phone;
  if (is_silence_alias(p.assemble()))
    return {std::string(kSilenceSymbol), lang};

  p.modifiers.erase(Modifier::Stress);
  p.modifiers.erase(Modifier::Length);
  p.modifiers.erase(Modifier::Nasalization);
  p.modifiers.erase(Modifier::NonSyllabic);
  p.modifiers.erase(Modifier::TieBar);  // fused: base chars stay adjacent

  switch (lang) {
    case Lang::De:
      // Aspirated stops and syllabic consonants collapse to plain forms.
      p.modifiers.erase(Modifier::Aspiration);
      p.modifiers.erase(Modifier::Syllabic);
      break;
    case Lang::En:
      // Alveolar tap reduces to the approximant rhotic; rhotic vowels
      // lose the hook and merge into schwa.
      if (p.base == "ɾ") p.base = "ɹ";   // ɾ → ɹ
      if (p.modifiers.erase(Modifier::Rhoticity) > 0) {
        if (p.base == "ɜ") p.base = "ə";  // ɝ → ə
      }
      break;
    default:
      // es keeps β/ð/ɣ (fricative table rows); cs, fr, it, ru and generic
      // apply the universal rules only.
      break;
  }

  std::string symbol = p.assemble();
  if (overrides) {
    if (const std::string* to = overrides->lookup(lang, symbol)) symbol = *to;
  }
  if (is_silence_alias(symbol)) return {std::string(kSilenceSymbol), lang};
  if (!table.contains(symbol))
    throw Error(ErrorKind::UnknownSymbol,
                "phone '" + symbol + "' (lang " + std::string(lang_code(lang)) +
                    ") not in feature table");
  return {symbol, lang};
}

// Raw label to canonical phone: trims, resolves silence aliases (including
// "<sil>", which is not parseable IPA), then parses and canonicalizes.
inline CanonicalPhone canonicalize_label(
    std::string_view raw, Lang lang, const FeatureTable& table,
    const OverrideRules* overrides = nullptr,
    bool unknown_as_silence = false,
    std::vector<std::string>* warnings = nullptr) {
  const std::string label = trim(raw);
  if (is_silence_alias(label)) return {std::string(kSilenceSymbol), lang};
  try {
    return canonicalize(parse_phone(label), lang, table, overrides);
  } catch (const Error& e) {
    if (unknown_as_silence && (e.kind() == ErrorKind::UnknownSymbol ||
                               e.kind() == ErrorKind::ParseError)) {
      if (warnings)
        warnings->push_back("mapped '" + label + "' to silence: " + e.what());
      return {std::string(kSilenceSymbol), lang};
    }
    throw;
  }
}

}  // namespace phonoq
