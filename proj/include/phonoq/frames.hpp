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

#include <cmath>
#include <string>
#include <vector>

#include "phonoq/error.hpp"
#include "phonoq/feature_table.hpp"
#include "phonoq/features.hpp"
#include "phonoq/io.hpp"
#include "phonoq/textgrid.hpp"

namespace phonoq {

inline constexpr double kDefaultFps = 50.0;

// Generic frames x dims matrix of real-valued inputs.
using FeatureMatrix = std::vector<std::vector<double>>;

struct FrameLabelSeq {
  double fps = kDefaultFps;
  std::vector<FeatureVector> labels;

  std::size_t frames() const { return labels.size(); }
};

// Center time of frame t at the given rate.
inline double frame_center(std::size_t t, double fps) {
  return (static_cast<double>(t) + 0.5) / fps;
}

// Number of whole frames covered by a duration. The epsilon absorbs
// representation noise in durations that are exact frame multiples.
inline std::size_t frame_count(double duration, double fps) {
  if (!(duration >= 0.0) || !(fps > 0.0))
    throw Error(ErrorKind::InvariantViolation,
                "frame_count needs duration >= 0 and fps > 0");
  return static_cast<std::size_t>(std::floor(duration * fps + 1e-9));
}

// A frame belongs to the segment whose half-open interval [start, end)
// contains its center; a boundary placed exactly on a center assigns the
// frame to the later segment.
inline bool segment_contains(const PhoneSegment& seg, double center) {
  return seg.start <= center && center < seg.end;
}

// Rasterizes aligned segments into per-frame feature labels. Frames whose
// center falls in a gap (or inside a silence segment) get the silence
// vector. Segments must be sorted and non-overlapping.
inline FrameLabelSeq segments_to_frames(const std::vector<PhoneSegment>& segments,
                                        const FeatureTable& table,
                                        double duration,
                                        double fps = kDefaultFps) {
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segments[i].start < segments[i - 1].end - 1e-9 ||
        segments[i].start < segments[i - 1].start)
      throw Error(ErrorKind::InvariantViolation,
                  "segments must be sorted and non-overlapping");
  }
  FrameLabelSeq seq;
  seq.fps = fps;
  const std::size_t total = frame_count(duration, fps);
  seq.labels.reserve(total);
  std::size_t cursor = 0;
  for (std::size_t t = 0; t < total; ++t) {
    const double center = frame_center(t, fps);
    while (cursor < segments.size() && segments[cursor].end <= center)
      ++cursor;
    if (cursor < segments.size() && segment_contains(segments[cursor], center))
      seq.labels.push_back(table.map_phone(segments[cursor].phone.symbol));
    else
      seq.labels.push_back(silence_vector());
  }
  return seq;
}

// A maximal run of identical frame labels, with boundaries on frame edges.
struct LabeledSpan {
  double start = 0.0;
  double end = 0.0;
  FeatureVector label;

  friend bool operator==(const LabeledSpan&, const LabeledSpan&) = default;
};

// Inverse of rasterization up to frame quantization: recovers maximal
// constant-label spans. Boundaries land on frame edges, so any original
// boundary between differing labels is recovered within one frame period.
inline std::vector<LabeledSpan> frames_to_segments(const FrameLabelSeq& seq) {
  std::vector<LabeledSpan> spans;
  const double fps = seq.fps;
  std::size_t run_start = 0;
  for (std::size_t t = 1; t <= seq.labels.size(); ++t) {
    if (t == seq.labels.size() || !(seq.labels[t] == seq.labels[run_start])) {
      spans.push_back({static_cast<double>(run_start) / fps,
                       static_cast<double>(t) / fps, seq.labels[run_start]});
      run_start = t;
    }
  }
  return spans;
}

// CSV with one row per frame: a 22-column header of dimension names, then
// binary indicators.
inline std::string render_frame_csv(const FrameLabelSeq& seq) {
  std::string out;
  for (std::size_t d = 0; d < kNumDims; ++d) {
    if (d) out += ',';
    out += kDimNames[d];
  }
  out += '\n';
  for (const auto& label : seq.labels) {
    const DenseVector dense = to_dense(label);
    for (std::size_t d = 0; d < kNumDims; ++d) {
      if (d) out += ',';
      out += static_cast<char>('0' + dense[d]);
    }
    out += '\n';
  }
  return out;
}

inline FrameLabelSeq parse_frame_csv(std::string_view text,
                                     double fps = kDefaultFps) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty())
    throw Error(ErrorKind::FormatError, "frame CSV is empty");
  const std::vector<std::string> header = split(trim(lines[0]), ',');
  if (header.size() != kNumDims)
    throw Error(ErrorKind::FormatError,
                "frame CSV header has " + std::to_string(header.size()) +
                    " columns, expected " + std::to_string(kNumDims));
  for (std::size_t d = 0; d < kNumDims; ++d) {
    if (trim(header[d]) != kDimNames[d])
      throw Error(ErrorKind::FormatError,
                  "frame CSV header column " + std::to_string(d + 1) +
                      " is '" + header[d] + "', expected '" +
                      std::string(kDimNames[d]) + "'");
  }
  FrameLabelSeq seq;
  seq.fps = fps;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string row = trim(lines[i]);
    if (row.empty()) continue;
    const std::vector<std::string> cells = split(row, ',');
    if (cells.size() != kNumDims)
      throw Error(ErrorKind::FormatError,
                  "frame CSV line " + std::to_string(i + 1) + " has " +
                      std::to_string(cells.size()) + " columns");
    DenseVector dense{};
    for (std::size_t d = 0; d < kNumDims; ++d) {
      const std::string cell = trim(cells[d]);
      if (cell == "0") dense[d] = 0;
      else if (cell == "1") dense[d] = 1;
      else
        throw Error(ErrorKind::FormatError,
                    "frame CSV line " + std::to_string(i + 1) +
                        ": indicator must be 0 or 1, got '" + cell + "'");
    }
    seq.labels.push_back(from_dense(dense));
  }
  return seq;
}

}  // namespace phonoq
