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
#include <cstddef>
#include <vector>

#include "phonoq/error.hpp"
#include "phonoq/features.hpp"
#include "phonoq/frames.hpp"
#include "phonoq/logits.hpp"
#include "phonoq/textgrid.hpp"

namespace phonoq {

struct DecodeOptions {
  // Overrides the voicing argmax for decoded vowels, which phonotactics
  // pins to voiced anyway.
  bool force_vowel_voiced = false;
};

namespace decode_detail {

// Argmax over [begin, end); ties resolve to the lowest index.
inline std::size_t argmax(const LogitRow& row, std::size_t begin,
                          std::size_t end) {
  std::size_t best = begin;
  for (std::size_t d = begin + 1; d < end; ++d)
    if (row[d] > row[best]) best = d;
  return best;
}

}  // namespace decode_detail

// Gated decoding of one activation row: the manner argmax decides which
// secondary groups may fire, then each active group contributes its own
// argmax. Structurally invalid combinations cannot be produced.
inline FeatureVector decode_frame(const LogitRow& row,
                                  const DecodeOptions& options = {}) {
  using namespace decode_detail;
  FeatureVector v;
  v.manner = static_cast<Manner>(
      argmax(row, kMannerOffset, kMannerOffset + kMannerSize));
  const GatingMask mask = gating_mask(v.manner);
  if (mask.height)
    v.height = static_cast<Height>(
        argmax(row, kHeightOffset, kHeightOffset + kHeightSize) -
        kHeightOffset);
  if (mask.backness)
    v.backness = static_cast<Backness>(
        argmax(row, kBacknessOffset, kBacknessOffset + kBacknessSize) -
        kBacknessOffset);
  if (mask.place)
    v.place = static_cast<Place>(
        argmax(row, kPlaceOffset, kPlaceOffset + kPlaceSize) - kPlaceOffset);
  if (mask.voicing) {
    if (options.force_vowel_voiced && v.manner == Manner::Vowel)
      v.voicing = Voicing::Voiced;
    else
      v.voicing = static_cast<Voicing>(
          argmax(row, kVoicingOffset, kVoicingOffset + kVoicingSize) -
          kVoicingOffset);
  }
  return v;
}

// One decoded prediction for a reference segment.
struct SegmentPrediction {
  double start = 0.0;
  double end = 0.0;
  FeatureVector label;
  // Set when the segment was too short to own any frame center; the label
  // is then silence and evaluation treats every dimension as missed.
  bool zero_frames = false;
};

// Sums activation rows whose frame centers fall in [start, end) and decodes
// the sum. Membership reuses the rasterization center rule, so aggregation
// and frame labeling can never disagree on a frame. A span too short to own
// a frame center decodes to silence with the zero_frames flag set.
inline SegmentPrediction aggregate_span(const LogitMatrix& logits,
                                        double start, double end,
                                        const DecodeOptions& options = {}) {
  const double fps = logits.fps;
  const std::size_t total = logits.frames();
  if (total == 0)
    throw Error(ErrorKind::EmptyLogits,
                "no activation frames for a non-empty utterance");
  SegmentPrediction pred;
  pred.start = start;
  pred.end = end;

  long lo = static_cast<long>(std::floor(start * fps - 0.5));
  long hi = static_cast<long>(std::ceil(end * fps - 0.5)) + 1;
  if (lo < 0) lo = 0;
  if (hi > static_cast<long>(total)) hi = static_cast<long>(total);

  const PhoneSegment span{start, end, CanonicalPhone{}};
  LogitRow sum{};
  std::size_t members = 0;
  for (long t = lo; t < hi; ++t) {
    const double center = frame_center(static_cast<std::size_t>(t), fps);
    if (!segment_contains(span, center)) continue;
    for (std::size_t d = 0; d < kNumDims; ++d) sum[d] += logits.rows[t][d];
    ++members;
  }
  if (members == 0) {
    pred.label = silence_vector();
    pred.zero_frames = true;
  } else {
    pred.label = decode_frame(sum, options);
  }
  return pred;
}

// Segment-level decoding against a reference segmentation: one prediction
// per non-silence segment, in order. Row sums run in frame index order, and
// decisions are invariant to positive rescaling of the logits.
inline std::vector<SegmentPrediction> aggregate_and_decode(
    const LogitMatrix& logits, const std::vector<PhoneSegment>& segments,
    const DecodeOptions& options = {}) {
  std::vector<SegmentPrediction> out;
  for (const auto& seg : segments) {
    if (seg.phone.is_silence()) continue;
    out.push_back(aggregate_span(logits, seg.start, seg.end, options));
  }
  return out;
}

}  // namespace phonoq
