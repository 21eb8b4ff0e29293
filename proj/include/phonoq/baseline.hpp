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
#include <vector>

#include "phonoq/decode.hpp"
#include "phonoq/edit_align.hpp"
#include "phonoq/feature_table.hpp"
#include "phonoq/textgrid.hpp"

namespace phonoq {

// Projects a phoneme hypothesis string onto the reference segmentation so a
// sequence model can be scored with the same segment-level feature metrics
// as a frame model. Reference phones are aligned to the hypothesis by
// minimum edit distance; each matched or substituted reference position
// takes the features of its aligned hypothesis phone, each deleted position
// counts as silence (all dimensions missed), and inserted hypothesis phones
// affect the error rate only. Exactly one prediction comes out per
// non-silence reference segment.
inline std::vector<SegmentPrediction> project_to_segments(
    const std::vector<PhoneSegment>& ref_segments,
    const std::vector<std::string>& hyp, const FeatureTable& table) {
  std::vector<const PhoneSegment*> refs;
  std::vector<std::string> ref_syms;
  for (const auto& seg : ref_segments) {
    if (seg.phone.is_silence()) continue;
    refs.push_back(&seg);
    ref_syms.push_back(seg.phone.symbol);
  }

  const EditScript script = align(ref_syms, hyp);
  std::vector<SegmentPrediction> out(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    out[i].start = refs[i]->start;
    out[i].end = refs[i]->end;
    out[i].label = silence_vector();
  }
  for (const auto& step : script.steps) {
    if (step.op == EditOp::Match || step.op == EditOp::Substitute)
      out[step.ref_index].label = table.map_phone(hyp[step.hyp_index]);
    // Delete keeps the silence default; Insert has no reference slot.
  }
  return out;
}

}  // namespace phonoq
