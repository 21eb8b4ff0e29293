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

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "phonoq/error.hpp"
#include "phonoq/features.hpp"
#include "phonoq/io.hpp"

namespace phonoq {

using LogitRow = std::array<double, kNumDims>;

// Per-frame detector activations, one column per feature dimension.
struct LogitMatrix {
  double fps = 50.0;
  std::vector<LogitRow> rows;

  std::size_t frames() const { return rows.size(); }
};

inline void validate_logits(const LogitMatrix& m) {
  for (std::size_t t = 0; t < m.rows.size(); ++t)
    for (std::size_t d = 0; d < kNumDims; ++d)
      if (!std::isfinite(m.rows[t][d]))
        throw Error(ErrorKind::FormatError,
                    "non-finite logit at frame " + std::to_string(t) +
                        ", dim " + std::to_string(d));
}

namespace logits_detail {

// Both serializations store float32, so a value is quantized once here and
// the CSV and binary forms of the same matrix decode identically.
inline float quantize(double v) { return static_cast<float>(v); }

inline std::string format_float(float v) {
  char buf[48];
  // Shortest representation that round-trips a float32.
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(v));
  return std::string(buf);
}

inline constexpr char kMagic[4] = {'P', 'H', 'Q', '2'};
inline constexpr std::uint32_t kVersion = 1;

}  // namespace logits_detail

inline std::string render_logits_csv(const LogitMatrix& m) {
  std::string out;
  for (std::size_t d = 0; d < kNumDims; ++d) {
    if (d) out += ',';
    out += kDimNames[d];
  }
  out += '\n';
  for (const auto& row : m.rows) {
    for (std::size_t d = 0; d < kNumDims; ++d) {
      if (d) out += ',';
      out += logits_detail::format_float(logits_detail::quantize(row[d]));
    }
    out += '\n';
  }
  return out;
}

inline LogitMatrix parse_logits_csv(std::string_view text,
                                    double fps = 50.0) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty())
    throw Error(ErrorKind::FormatError, "logit CSV is empty");
  const std::vector<std::string> header = split(trim(lines[0]), ',');
  if (header.size() != kNumDims)
    throw Error(ErrorKind::FormatError,
                "logit CSV header has " + std::to_string(header.size()) +
                    " columns, expected " + std::to_string(kNumDims));
  for (std::size_t d = 0; d < kNumDims; ++d) {
    if (trim(header[d]) != kDimNames[d])
      throw Error(ErrorKind::FormatError,
                  "logit CSV header column " + std::to_string(d + 1) +
                      " is '" + header[d] + "', expected '" +
                      std::string(kDimNames[d]) + "'");
  }
  LogitMatrix m;
  m.fps = fps;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string rowline = trim(lines[i]);
    if (rowline.empty()) continue;
    const std::vector<std::string> cells = split(rowline, ',');
    if (cells.size() != kNumDims)
      throw Error(ErrorKind::FormatError,
                  "logit CSV line " + std::to_string(i + 1) + " has " +
                      std::to_string(cells.size()) + " columns");
    LogitRow row{};
    for (std::size_t d = 0; d < kNumDims; ++d)
      row[d] = static_cast<double>(logits_detail::quantize(
          parse_double(trim(cells[d]), "logit CSV")));
    m.rows.push_back(row);
  }
  validate_logits(m);
  return m;
}

// Binary layout: magic "PHQ2", then little-endian u32 version, u32 frame
// count, u32 dimension count (22), then frame-major float32 values.
inline std::string render_logits_binary(const LogitMatrix& m) {
  std::string out;
  out.append(logits_detail::kMagic, 4);
  put_u32(out, logits_detail::kVersion);
  put_u32(out, static_cast<std::uint32_t>(m.rows.size()));
  put_u32(out, static_cast<std::uint32_t>(kNumDims));
  for (const auto& row : m.rows)
    for (double v : row) put_f32(out, logits_detail::quantize(v));
  return out;
}

inline LogitMatrix parse_logits_binary(std::string_view bytes,
                                       double fps = 50.0) {
  BinaryReader r(bytes, "logit file");
  const std::string magic = r.bytes(4);
  if (magic != std::string(logits_detail::kMagic, 4))
    throw Error(ErrorKind::FormatError, "bad logit file magic");
  const std::uint32_t version = r.u32();
  if (version != logits_detail::kVersion)
    throw Error(ErrorKind::FormatError,
                "unsupported logit file version " + std::to_string(version));
  const std::uint32_t frames = r.u32();
  const std::uint32_t dims = r.u32();
  if (dims != kNumDims)
    throw Error(ErrorKind::FormatError,
                "logit file has " + std::to_string(dims) +
                    " dims, expected " + std::to_string(kNumDims));
  LogitMatrix m;
  m.fps = fps;
  m.rows.resize(frames);
  for (std::uint32_t t = 0; t < frames; ++t)
    for (std::size_t d = 0; d < kNumDims; ++d)
      m.rows[t][d] = static_cast<double>(r.f32());
  if (!r.at_end())
    throw Error(ErrorKind::FormatError, "trailing bytes in logit file");
  validate_logits(m);
  return m;
}

// Dispatches on content: binary files start with the magic bytes.
inline LogitMatrix parse_logits(std::string_view content, double fps = 50.0) {
  if (content.size() >= 4 &&
      content.substr(0, 4) == std::string_view(logits_detail::kMagic, 4))
    return parse_logits_binary(content, fps);
  return parse_logits_csv(content, fps);
}

inline LogitMatrix load_logits(const std::string& path, double fps = 50.0) {
  return parse_logits(read_file(path), fps);
}

}  // namespace phonoq
