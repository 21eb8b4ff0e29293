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

#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phonoq/metrics.hpp"

namespace phonoq {

// One evaluation result. Rates are derived from the counts at render time,
// so the two serializations can never drift apart.
struct EvalReport {
  BinaryCounts counts;
  std::vector<std::size_t> macro_dims;  // subset used for the macro score
  std::optional<double> per;            // phoneme error rate, if applicable
  long zero_frame_segments = 0;
};

namespace report_detail {

inline std::string rate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return std::string(buf);
}

inline std::string opt_rate(const std::optional<double>& v, bool empty) {
  if (empty || !v) return "n/a";
  return rate(*v);
}

// Key/value pairs in their pinned order; both serializations derive from
// this one list.
inline std::vector<std::pair<std::string, std::string>> report_rows(
    const EvalReport& r) {
  const bool empty = r.counts.segments == 0;
  const auto dims = r.macro_dims;
  validate_dims(dims);
  const auto rates = f1_per_dim(r.counts);

  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("segments", std::to_string(r.counts.segments));
  rows.emplace_back("empty", empty ? "1" : "0");
  rows.emplace_back("dims", std::to_string(dims.size()));
  rows.emplace_back("macro_f1",
                    empty ? "n/a" : rate(macro_f1(r.counts, dims)));
  rows.emplace_back("group_f1.manner",
                    opt_rate(group_f1(r.counts, FeatureGroup::MannerG, dims),
                             empty));
  rows.emplace_back("group_f1.height",
                    opt_rate(group_f1(r.counts, FeatureGroup::HeightG, dims),
                             empty));
  rows.emplace_back(
      "group_f1.backness",
      opt_rate(group_f1(r.counts, FeatureGroup::BacknessG, dims), empty));
  rows.emplace_back("group_f1.place",
                    opt_rate(group_f1(r.counts, FeatureGroup::PlaceG, dims),
                             empty));
  rows.emplace_back("group_f1.voicing",
                    opt_rate(group_f1(r.counts, FeatureGroup::VoicingG, dims),
                             empty));
  rows.emplace_back("vowel_f1", opt_rate(vowel_f1(r.counts, dims), empty));
  rows.emplace_back("per", r.per ? rate(*r.per) : "-");
  rows.emplace_back("zero_frame_segments",
                    std::to_string(r.zero_frame_segments));

  std::string degen;
  if (!empty) {
    for (std::size_t d = 1; d < kNumDims; ++d) {
      if (!rates[d].degenerate) continue;
      if (!degen.empty()) degen += ';';
      degen += kDimNames[d];
    }
  }
  rows.emplace_back("degenerate_dims", degen.empty() ? "-" : degen);

  for (std::size_t d = 1; d < kNumDims; ++d) {
    const std::string base = "dim." + std::string(kDimNames[d]);
    rows.emplace_back(base + ".precision",
                      empty ? "n/a" : rate(rates[d].precision));
    rows.emplace_back(base + ".recall", empty ? "n/a" : rate(rates[d].recall));
    rows.emplace_back(base + ".f1", empty ? "n/a" : rate(rates[d].f1));
  }
  return rows;
}

}  // namespace report_detail

// Human-readable form: one tab-separated key/value pair per line.
inline std::string render_report_text(const EvalReport& r) {
  std::string out = "# phonoq eval report v1\n";
  for (const auto& [key, value] : report_detail::report_rows(r))
    out += key + "\t" + value + "\n";
  return out;
}

// Machine-readable form: a header row of keys and one row of values.
inline std::string render_report_csv(const EvalReport& r) {
  const auto rows = report_detail::report_rows(r);
  std::string head, body;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) {
      head += ',';
      body += ',';
    }
    head += rows[i].first;
    body += rows[i].second;
  }
  return head + "\n" + body + "\n";
}

}  // namespace phonoq
