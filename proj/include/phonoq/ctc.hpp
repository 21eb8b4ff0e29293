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

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "phonoq/error.hpp"
#include "phonoq/io.hpp"

namespace phonoq {

// Frame-major phoneme posterior matrix. Index 0 of the vocabulary is the
// blank symbol.
struct PhonePosteriors {
  double fps = 50.0;
  std::vector<std::string> vocab;
  std::vector<double> values;  // frames x vocab, row-major

  std::size_t frames() const {
    return vocab.empty() ? 0 : values.size() / vocab.size();
  }
};

inline void validate_posteriors(const PhonePosteriors& p) {
  if (p.vocab.size() < 2)
    throw Error(ErrorKind::FormatError,
                "posterior vocabulary needs blank plus at least one symbol");
  std::set<std::string> seen;
  for (const auto& s : p.vocab)
    if (!seen.insert(s).second)
      throw Error(ErrorKind::FormatError,
                  "duplicate vocabulary symbol '" + s + "'");
  if (p.values.size() % p.vocab.size() != 0)
    throw Error(ErrorKind::FormatError,
                "posterior value count is not a multiple of vocab size");
}

// Greedy CTC path decoding: per-frame argmax with ties to the lowest index,
// collapse repeated symbols, then drop blanks.
inline std::vector<std::string> ctc_greedy(const PhonePosteriors& p) {
  validate_posteriors(p);
  const std::size_t v = p.vocab.size();
  const std::size_t frames = p.frames();
  std::vector<std::string> out;
  std::size_t prev = v;  // sentinel: nothing collapses with the first frame
  for (std::size_t t = 0; t < frames; ++t) {
    const double* row = p.values.data() + t * v;
    std::size_t best = 0;
    for (std::size_t k = 1; k < v; ++k)
      if (row[k] > row[best]) best = k;
    if (best != prev && best != 0) out.push_back(p.vocab[best]);
    prev = best;
  }
  return out;
}

namespace ctc_detail {
inline constexpr char kMagic[4] = {'P', 'H', 'Q', '2'};
inline constexpr std::uint32_t kVersion = 1;
}  // namespace ctc_detail

// Same envelope as the activation matrix format, with the vocabulary size
// in place of the fixed dimension count and a trailing vocab block of
// length-prefixed UTF-8 symbols.
inline std::string render_posteriors(const PhonePosteriors& p) {
  validate_posteriors(p);
  std::string out;
  out.append(ctc_detail::kMagic, 4);
  put_u32(out, ctc_detail::kVersion);
  put_u32(out, static_cast<std::uint32_t>(p.frames()));
  put_u32(out, static_cast<std::uint32_t>(p.vocab.size()));
  for (double v : p.values) put_f32(out, static_cast<float>(v));
  put_u32(out, static_cast<std::uint32_t>(p.vocab.size()));
  for (const auto& s : p.vocab) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out += s;
  }
  return out;
}

inline PhonePosteriors parse_posteriors(std::string_view bytes,
                                        double fps = 50.0) {
  BinaryReader r(bytes, "posterior file");
  if (r.bytes(4) != std::string(ctc_detail::kMagic, 4))
    throw Error(ErrorKind::FormatError, "bad posterior file magic");
  const std::uint32_t version = r.u32();
  if (version != ctc_detail::kVersion)
    throw Error(ErrorKind::FormatError,
                "unsupported posterior file version " +
                    std::to_string(version));
  const std::uint32_t frames = r.u32();
  const std::uint32_t vocab_size = r.u32();
  PhonePosteriors p;
  p.fps = fps;
  p.values.resize(static_cast<std::size_t>(frames) * vocab_size);
  for (auto& v : p.values) v = static_cast<double>(r.f32());
  const std::uint32_t count = r.u32();
  if (count != vocab_size)
    throw Error(ErrorKind::FormatError,
                "posterior vocab block count mismatch");
  p.vocab.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t len = r.u32();
    p.vocab.push_back(r.bytes(len));
  }
  if (!r.at_end())
    throw Error(ErrorKind::FormatError, "trailing bytes in posterior file");
  validate_posteriors(p);
  return p;
}

inline PhonePosteriors load_posteriors(const std::string& path,
                                       double fps = 50.0) {
  return parse_posteriors(read_file(path), fps);
}

// Hypothesis transcripts: whitespace-separated symbols, one utterance per
// line.
inline std::vector<std::string> parse_hyp_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace phonoq
