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

#include <string>
#include <string_view>
#include <vector>

#include "phonoq/error.hpp"
#include "phonoq/io.hpp"
#include "phonoq/phoneset.hpp"
#include "phonoq/utf8.hpp"

namespace phonoq {

// One aligned phone interval. Within an utterance segments are sorted and
// non-overlapping; gaps are implicit silence.
struct PhoneSegment {
  double start = 0.0;
  double end = 0.0;
  CanonicalPhone phone;

  friend bool operator==(const PhoneSegment&, const PhoneSegment&) = default;
};

struct Utterance {
  double duration = 0.0;
  std::vector<PhoneSegment> segments;
};

namespace textgrid_detail {

struct RawInterval {
  double xmin = 0.0;
  double xmax = 0.0;
  std::string text;
};

struct RawTier {
  std::string klass;
  std::string name;
  std::vector<RawInterval> intervals;
};

struct RawDocument {
  double xmin = 0.0;
  double xmax = 0.0;
  std::vector<RawTier> tiers;
};

class Cursor {
 public:
  explicit Cursor(std::vector<std::string> lines) : lines_(std::move(lines)) {}

  bool done() const { return pos_ >= lines_.size(); }
  std::size_t lineno() const { return pos_ + 1; }

  // Next non-blank line, without advancing.
  const std::string* peek() {
    while (pos_ < lines_.size() && trim(lines_[pos_]).empty()) ++pos_;
    return pos_ < lines_.size() ? &lines_[pos_] : nullptr;
  }

  std::string next(const char* expected) {
    const std::string* line = peek();
    if (!line)
      throw Error(ErrorKind::FormatError,
                  std::string("unexpected end of TextGrid, expected ") +
                      expected);
    ++pos_;
    return trim(*line);
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::FormatError,
                "TextGrid line " + std::to_string(lineno()) + ": " + msg);
  }

 private:
  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

// Accepts `key = value` or a bare value (Praat tolerates both in long
// format derivatives); returns the value part.
inline std::string value_of(const std::string& line, std::string_view key) {
  const std::size_t eq = line.find('=');
  if (eq == std::string::npos) return trim(line);
  const std::string k = trim(line.substr(0, eq));
  if (!key.empty() && k != key) return "";
  return trim(line.substr(eq + 1));
}

inline double number_of(Cursor& cur, std::string_view key) {
  const std::string line = cur.next("a number");
  const std::string value = value_of(line, key);
  if (value.empty())
    cur.fail("expected '" + std::string(key) + " = <number>', got '" + line +
             "'");
  return parse_double(value, "TextGrid");
}

inline std::string unquote(Cursor& cur, const std::string& value) {
  if (value.size() < 2 || value.front() != '"' || value.back() != '"')
    cur.fail("expected a quoted string, got '" + value + "'");
  const std::string inner = value.substr(1, value.size() - 2);
  // Praat escapes an embedded quote as "".
  std::string out;
  out.reserve(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '"' && i + 1 < inner.size() && inner[i + 1] == '"') ++i;
    out.push_back(inner[i]);
  }
  return out;
}

inline std::string string_of(Cursor& cur, std::string_view key) {
  const std::string line = cur.next("a string");
  return unquote(cur, value_of(line, key));
}

inline RawDocument parse_document(std::string_view text) {
  Cursor cur(split_lines(to_utf8(text)));

  std::string line = cur.next("File type header");
  if (value_of(line, "File type") != "\"ooTextFile\"")
    cur.fail("not an ooTextFile header: '" + line + "'");
  line = cur.next("Object class header");
  if (value_of(line, "Object class") != "\"TextGrid\"")
    cur.fail("not a TextGrid object: '" + line + "'");

  RawDocument doc;
  doc.xmin = number_of(cur, "xmin");
  doc.xmax = number_of(cur, "xmax");

  const std::string* peeked = cur.peek();
  if (peeked && trim(*peeked).rfind("tiers?", 0) == 0) {
    cur.next("tiers?");
  } else if (peeked && trim(*peeked) == "<exists>") {
    // The short text format writes bare values; everything after this
    // point would be positional.
    cur.fail(
        "short-format TextGrid detected; only the long TextGrid text format "
        "is supported");
  }
  const long size = static_cast<long>(number_of(cur, "size"));

  peeked = cur.peek();
  if (!peeked || trim(*peeked).rfind("item", 0) != 0)
    cur.fail(
        "no 'item []:' block found; only the long TextGrid text format is "
        "supported");
  cur.next("item []:");

  for (long k = 0; k < size; ++k) {
    line = cur.next("item [n]:");
    if (line.rfind("item", 0) != 0) cur.fail("expected 'item [n]:'");
    RawTier tier;
    tier.klass = string_of(cur, "class");
    tier.name = string_of(cur, "name");
    number_of(cur, "xmin");
    number_of(cur, "xmax");
    if (tier.klass == "IntervalTier") {
      const long n = static_cast<long>(number_of(cur, "intervals: size"));
      for (long i = 0; i < n; ++i) {
        line = cur.next("intervals [n]:");
        if (line.rfind("intervals", 0) != 0)
          cur.fail("expected 'intervals [n]:'");
        RawInterval iv;
        iv.xmin = number_of(cur, "xmin");
        iv.xmax = number_of(cur, "xmax");
        iv.text = string_of(cur, "text");
        if (iv.xmax <= iv.xmin)
          cur.fail("interval has non-positive duration");
        if (!tier.intervals.empty() &&
            iv.xmin < tier.intervals.back().xmax - 1e-9)
          cur.fail("intervals overlap or are out of order");
        tier.intervals.push_back(std::move(iv));
      }
    } else if (tier.klass == "TextTier") {
      const long n = static_cast<long>(number_of(cur, "points: size"));
      for (long i = 0; i < n; ++i) {
        cur.next("points [n]:");
        number_of(cur, "number");
        string_of(cur, "mark");
      }
    } else {
      cur.fail("unsupported tier class '" + tier.klass + "'");
    }
    doc.tiers.push_back(std::move(tier));
  }
  return doc;
}

}  // namespace textgrid_detail

struct TextGridOptions {
  std::string tier_name = "phones";
  bool unknown_as_silence = false;
  const OverrideRules* overrides = nullptr;
  std::vector<std::string>* warnings = nullptr;
};

// Parses a Praat TextGrid (long text format) and canonicalizes the matching
// interval tier's labels. Empty labels become silence segments.
inline Utterance parse_textgrid(std::string_view document, Lang lang,
                                const FeatureTable& table,
                                const TextGridOptions& options = {}) {
  const auto doc = textgrid_detail::parse_document(document);
  const textgrid_detail::RawTier* tier = nullptr;
  for (const auto& t : doc.tiers) {
    if (t.klass == "IntervalTier" && t.name == options.tier_name) {
      tier = &t;
      break;
    }
  }
  if (!tier)
    throw Error(ErrorKind::MissingTier,
                "no IntervalTier named '" + options.tier_name + "'");

  Utterance utt;
  utt.duration = doc.xmax;
  for (const auto& iv : tier->intervals) {
    PhoneSegment seg;
    seg.start = iv.xmin;
    seg.end = iv.xmax;
    seg.phone =
        canonicalize_label(iv.text, lang, table, options.overrides,
                           options.unknown_as_silence, options.warnings);
    utt.segments.push_back(std::move(seg));
  }
  return utt;
}

// Long-format writer used by the synthetic generator and tests. Times are
// printed with six decimals, which re-parses to the identical double for
// frame-aligned times.
inline std::string render_textgrid(const std::vector<PhoneSegment>& segments,
                                   double duration,
                                   const std::string& tier_name = "phones") {
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
  };
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += "\"\"";
      else out.push_back(c);
    }
    out += "\"";
    return out;
  };

  // Praat grids tile the time axis; fill gaps with empty (silence) text.
  std::vector<textgrid_detail::RawInterval> cells;
  double t = 0.0;
  for (const auto& seg : segments) {
    if (seg.start > t + 1e-9) cells.push_back({t, seg.start, ""});
    cells.push_back(
        {seg.start, seg.end,
         seg.phone.is_silence() ? std::string() : seg.phone.symbol});
    t = seg.end;
  }
  if (duration > t + 1e-9) cells.push_back({t, duration, ""});

  std::string out;
  out += "File type = \"ooTextFile\"\n";
  out += "Object class = \"TextGrid\"\n\n";
  out += "xmin = 0.000000\n";
  out += "xmax = " + num(duration) + "\n";
  out += "tiers? <exists>\n";
  out += "size = 1\n";
  out += "item []:\n";
  out += "    item [1]:\n";
  out += "        class = \"IntervalTier\"\n";
  out += "        name = " + quote(tier_name) + "\n";
  out += "        xmin = 0.000000\n";
  out += "        xmax = " + num(duration) + "\n";
  out += "        intervals: size = " + std::to_string(cells.size()) + "\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    out += "        intervals [" + std::to_string(i + 1) + "]:\n";
    out += "            xmin = " + num(cells[i].xmin) + "\n";
    out += "            xmax = " + num(cells[i].xmax) + "\n";
    out += "            text = " + quote(cells[i].text) + "\n";
  }
  return out;
}

}  // namespace phonoq
