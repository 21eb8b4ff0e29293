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
#include <cstdint>
#include <string>
#include <vector>

#include "phonoq/error.hpp"
#include "phonoq/feature_table.hpp"
#include "phonoq/frames.hpp"
#include "phonoq/logits.hpp"
#include "phonoq/rng.hpp"
#include "phonoq/textgrid.hpp"

namespace phonoq {

// Deterministic synthetic corpus: segment timelines, matching activation
// matrices, and clustered training features. Everything is a pure function
// of the seed; utterances draw from independent sub-streams so regenerating
// utterance k alone reproduces it.
struct SynthConfig {
  std::uint64_t seed = 1;
  std::vector<std::string> inventory = {"p",  "n", "r", "s", "tʃ", "j",
                                        "l",  "k", "i", "a", "u",  "o"};
  std::size_t utterances = 1;
  std::size_t segments_per_utterance = 10;
  double min_duration = 0.06;   // seconds
  double max_duration = 0.30;   // seconds
  double fps = kDefaultFps;
  double silence_gap_prob = 0.25;
  double logit_scale = 10.0;    // activation for present dimensions
  double logit_noise = 0.0;     // gaussian sigma added to every logit
  std::size_t feature_dim = 16;
  double cluster_separation = 10.0;
  double feature_noise = 1.0;
};

inline void validate_synth_config(const SynthConfig& cfg,
                                  const FeatureTable& table) {
  if (cfg.inventory.empty())
    throw Error(ErrorKind::ConfigError, "synthetic inventory is empty");
  for (const auto& sym : cfg.inventory) {
    if (sym == std::string(kSilenceSymbol))
      throw Error(ErrorKind::ConfigError,
                  "synthetic inventory must not contain the silence symbol");
    table.map_phone(sym);  // throws UnknownSymbol when missing
  }
  if (!(cfg.min_duration > 0.0) || cfg.max_duration < cfg.min_duration)
    throw Error(ErrorKind::ConfigError,
                "need 0 < min_duration <= max_duration");
  if (!(cfg.fps > 0.0))
    throw Error(ErrorKind::ConfigError, "fps must be positive");
  if (cfg.silence_gap_prob < 0.0 || cfg.silence_gap_prob > 1.0)
    throw Error(ErrorKind::ConfigError,
                "silence_gap_prob must be in [0, 1]");
  if (cfg.segments_per_utterance == 0 || cfg.utterances == 0)
    throw Error(ErrorKind::ConfigError,
                "utterances and segments_per_utterance must be positive");
  if (cfg.feature_dim < cfg.inventory.size())
    throw Error(ErrorKind::ConfigError,
                "feature_dim must be at least the inventory size");
  if (cfg.logit_noise < 0.0 || cfg.feature_noise < 0.0)
    throw Error(ErrorKind::ConfigError, "noise sigmas must be >= 0");
}

struct SynthUtterance {
  double duration = 0.0;
  std::vector<PhoneSegment> segments;
};

namespace synth_detail {

// Durations are quantized to whole frames (at least one), so every segment
// boundary sits exactly on a frame edge and printed times re-parse exactly.
inline long draw_frames(Rng& rng, const SynthConfig& cfg) {
  const double seconds = rng.uniform(cfg.min_duration, cfg.max_duration);
  const long frames = std::lround(seconds * cfg.fps);
  return frames < 1 ? 1 : frames;
}

// Inventory index of the segment owning this frame center, or -1 for
// silence. Shares the center rule with rasterization.
inline int frame_phone_index(const SynthUtterance& utt,
                             const SynthConfig& cfg, double center,
                             std::size_t& cursor) {
  while (cursor < utt.segments.size() &&
         utt.segments[cursor].end <= center)
    ++cursor;
  if (cursor >= utt.segments.size() ||
      !segment_contains(utt.segments[cursor], center))
    return -1;
  const std::string& sym = utt.segments[cursor].phone.symbol;
  for (std::size_t k = 0; k < cfg.inventory.size(); ++k)
    if (cfg.inventory[k] == sym) return static_cast<int>(k);
  return -1;
}

}  // namespace synth_detail

// Stream 0: segment timelines. Optional silence gaps are drawn before each
// phone and once at the end of the utterance.
inline std::vector<SynthUtterance> gen_segments(const SynthConfig& cfg,
                                                const FeatureTable& table) {
  validate_synth_config(cfg, table);
  std::vector<SynthUtterance> utts;
  utts.reserve(cfg.utterances);
  for (std::size_t u = 0; u < cfg.utterances; ++u) {
    Rng rng(derive_seed(cfg.seed, 0, u));
    SynthUtterance utt;
    long t = 0;
    for (std::size_t s = 0; s < cfg.segments_per_utterance; ++s) {
      if (cfg.silence_gap_prob > 0.0 &&
          rng.uniform() < cfg.silence_gap_prob)
        t += synth_detail::draw_frames(rng, cfg);
      const std::size_t k = rng.below(cfg.inventory.size());
      const long d = synth_detail::draw_frames(rng, cfg);
      PhoneSegment seg;
      seg.start = static_cast<double>(t) / cfg.fps;
      seg.end = static_cast<double>(t + d) / cfg.fps;
      seg.phone = CanonicalPhone{cfg.inventory[k], Lang::Generic};
      utt.segments.push_back(std::move(seg));
      t += d;
    }
    if (cfg.silence_gap_prob > 0.0 && rng.uniform() < cfg.silence_gap_prob)
      t += synth_detail::draw_frames(rng, cfg);
    utt.duration = static_cast<double>(t) / cfg.fps;
    utts.push_back(std::move(utt));
  }
  return utts;
}

// Stream 1: activation matrix for one utterance. Present dimensions sit at
// logit_scale, absent ones at zero, plus optional isotropic noise. With the
// same seed, two runs that differ only in logit_noise scale the same
// underlying gaussian draws.
inline LogitMatrix gen_logits(const SynthUtterance& utt,
                              const FeatureTable& table,
                              const SynthConfig& cfg, std::size_t utt_index) {
  Rng rng(derive_seed(cfg.seed, 1, utt_index));
  LogitMatrix m;
  m.fps = cfg.fps;
  const std::size_t total = frame_count(utt.duration, cfg.fps);
  m.rows.reserve(total);
  std::size_t cursor = 0;
  for (std::size_t t = 0; t < total; ++t) {
    const double center = frame_center(t, cfg.fps);
    while (cursor < utt.segments.size() &&
           utt.segments[cursor].end <= center)
      ++cursor;
    FeatureVector label = silence_vector();
    if (cursor < utt.segments.size() &&
        segment_contains(utt.segments[cursor], center))
      label = table.map_phone(utt.segments[cursor].phone.symbol);
    const DenseVector dense = to_dense(label);
    LogitRow row{};
    for (std::size_t d = 0; d < kNumDims; ++d) {
      row[d] = cfg.logit_scale * static_cast<double>(dense[d]);
      if (cfg.logit_noise > 0.0) row[d] += cfg.logit_noise * rng.gaussian();
    }
    m.rows.push_back(row);
  }
  return m;
}

// Stream 2: classifier inputs. The k-th inventory phone sits at
// cluster_separation along axis k, silence at the origin, plus isotropic
// gaussian noise.
inline FeatureMatrix gen_training_features(const SynthUtterance& utt,
                                           const SynthConfig& cfg,
                                           std::size_t utt_index) {
  Rng rng(derive_seed(cfg.seed, 2, utt_index));
  const std::size_t total = frame_count(utt.duration, cfg.fps);
  FeatureMatrix features;
  features.reserve(total);
  std::size_t cursor = 0;
  for (std::size_t t = 0; t < total; ++t) {
    const double center = frame_center(t, cfg.fps);
    const int k = synth_detail::frame_phone_index(utt, cfg, center, cursor);
    std::vector<double> row(cfg.feature_dim, 0.0);
    if (k >= 0) row[static_cast<std::size_t>(k)] = cfg.cluster_separation;
    if (cfg.feature_noise > 0.0)
      for (auto& v : row) v += cfg.feature_noise * rng.gaussian();
    features.push_back(std::move(row));
  }
  return features;
}

}  // namespace phonoq
