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
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "phonoq/error.hpp"
#include "phonoq/features.hpp"

namespace phonoq {

struct DimCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  long tn = 0;
};

// Micro counts per dimension over a set of evaluated segments. The silence
// dimension (index 0) is never counted; it is implied by the other eight
// manner dimensions.
struct BinaryCounts {
  std::array<DimCounts, kNumDims> dims{};
  long segments = 0;

  void merge(const BinaryCounts& other) {
    for (std::size_t d = 0; d < kNumDims; ++d) {
      dims[d].tp += other.dims[d].tp;
      dims[d].fp += other.dims[d].fp;
      dims[d].fn += other.dims[d].fn;
      dims[d].tn += other.dims[d].tn;
    }
    segments += other.segments;
  }
};

// Accumulates confusion counts between reference and predicted feature
// vectors, pairwise. References must be non-silence; predictions may be
// silence (a missed segment scores a miss on every reference dimension).
// Segments whose reference place is unspecified contribute nothing to the
// five place dimensions.
inline BinaryCounts count_features(const std::vector<FeatureVector>& refs,
                                   const std::vector<FeatureVector>& preds) {
  if (refs.size() != preds.size())
    throw Error(ErrorKind::LengthMismatch,
                "reference and prediction counts differ: " +
                    std::to_string(refs.size()) + " vs " +
                    std::to_string(preds.size()));
  BinaryCounts counts;
  counts.segments = static_cast<long>(refs.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].manner == Manner::Silence)
      throw Error(ErrorKind::InvariantViolation,
                  "reference label " + std::to_string(i) + " is silence");
    const DenseVector r = to_dense(refs[i]);
    const DenseVector p = to_dense(preds[i]);
    const bool skip_place = place_unspecified(refs[i]);
    for (std::size_t d = 1; d < kNumDims; ++d) {
      if (skip_place && dim_group(d) == FeatureGroup::PlaceG) continue;
      if (r[d] && p[d]) ++counts.dims[d].tp;
      else if (!r[d] && p[d]) ++counts.dims[d].fp;
      else if (r[d] && !p[d]) ++counts.dims[d].fn;
      else ++counts.dims[d].tn;
    }
  }
  return counts;
}

struct DimRates {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when any of the three ratios was 0/0 and was pinned to zero.
  bool degenerate = false;
};

inline DimRates rates_for(const DimCounts& c) {
  DimRates r;
  if (c.tp + c.fp == 0) r.degenerate = true;
  else r.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  if (c.tp + c.fn == 0) r.degenerate = true;
  else r.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  if (r.precision + r.recall == 0.0) {
    r.f1 = 0.0;
    r.degenerate = true;
  } else {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

inline std::array<DimRates, kNumDims> f1_per_dim(const BinaryCounts& counts) {
  std::array<DimRates, kNumDims> out;
  for (std::size_t d = 1; d < kNumDims; ++d) out[d] = rates_for(counts.dims[d]);
  return out;
}

// The 21 scored dimensions (everything except silence).
inline std::vector<std::size_t> all21_dims() {
  std::vector<std::size_t> dims;
  for (std::size_t d = 1; d < kNumDims; ++d) dims.push_back(d);
  return dims;
}

// Subset used when comparing against systems whose feature space only
// shares twelve dimensions with this one.
inline std::vector<std::size_t> shared12_dims() {
  return {1, 2, 3, 4, 7, 8, 15, 16, 17, 19, 20, 21};
}

inline void validate_dims(const std::vector<std::size_t>& dims) {
  if (dims.empty())
    throw Error(ErrorKind::EmptySubset, "empty dimension subset");
  for (std::size_t d : dims)
    if (d < 1 || d >= kNumDims)
      throw Error(ErrorKind::InvariantViolation,
                  "dimension index " + std::to_string(d) + " out of range");
}

// Unweighted mean of per-dimension F1 over the subset.
inline double macro_f1(const BinaryCounts& counts,
                       const std::vector<std::size_t>& dims) {
  validate_dims(dims);
  const auto rates = f1_per_dim(counts);
  double sum = 0.0;
  for (std::size_t d : dims) sum += rates[d].f1;
  return sum / static_cast<double>(dims.size());
}

// Mean F1 over the group's members that are also in the active subset;
// empty intersection yields no value.
inline std::optional<double> group_f1(const BinaryCounts& counts,
                                      FeatureGroup group,
                                      const std::vector<std::size_t>& dims) {
  const auto rates = f1_per_dim(counts);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t d : dims) {
    if (dim_group(d) != group) continue;
    sum += rates[d].f1;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

// Composite vowel quality score: mean of the height and backness group F1.
inline std::optional<double> vowel_f1(const BinaryCounts& counts,
                                      const std::vector<std::size_t>& dims) {
  const auto h = group_f1(counts, FeatureGroup::HeightG, dims);
  const auto b = group_f1(counts, FeatureGroup::BacknessG, dims);
  if (!h || !b) return std::nullopt;
  return (*h + *b) / 2.0;
}

}  // namespace phonoq
