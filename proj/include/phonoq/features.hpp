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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "phonoq/error.hpp"

namespace phonoq {

// The 22-dimensional phonological feature space. Dimension order is fixed:
//   0..8   manner   [silence stop nasal rhotic fricative affricate
//                    approximant lateral vowel]
//   9..11  height   [high mid low]
//   12..14 backness [front central back]
//   15..19 place    [labial alveolar velar palatal postalveolar]
//   20..21 voicing  [voiceless voiced]

enum class Manner : std::uint8_t {
  Silence = 0,
  Stop,
  Nasal,
  Rhotic,
  Fricative,
  Affricate,
  Approximant,
  Lateral,
  Vowel,
};

enum class Height : std::uint8_t { High = 0, Mid, Low };
enum class Backness : std::uint8_t { Front = 0, Central, Back };
enum class Place : std::uint8_t {
  Labial = 0,
  Alveolar,
  Velar,
  Palatal,
  Postalveolar,
};
enum class Voicing : std::uint8_t { Voiceless = 0, Voiced };

inline constexpr std::size_t kNumDims = 22;

inline constexpr std::size_t kMannerOffset = 0;
inline constexpr std::size_t kMannerSize = 9;
inline constexpr std::size_t kHeightOffset = 9;
inline constexpr std::size_t kHeightSize = 3;
inline constexpr std::size_t kBacknessOffset = 12;
inline constexpr std::size_t kBacknessSize = 3;
inline constexpr std::size_t kPlaceOffset = 15;
inline constexpr std::size_t kPlaceSize = 5;
inline constexpr std::size_t kVoicingOffset = 20;
inline constexpr std::size_t kVoicingSize = 2;

inline constexpr std::size_t kSilenceDim = 0;

inline constexpr std::array<std::string_view, kNumDims> kDimNames = {
    "silence",     "stop",    "nasal",   "rhotic",       "fricative",
    "affricate",   "approximant", "lateral", "vowel",    "high",
    "mid",         "low",     "front",   "central",      "back",
    "labial",      "alveolar", "velar",  "palatal",      "postalveolar",
    "voiceless",   "voiced"};

enum class FeatureGroup : std::uint8_t { MannerG, HeightG, BacknessG, PlaceG, VoicingG };

inline FeatureGroup dim_group(std::size_t dim) {
  if (dim < kHeightOffset) return FeatureGroup::MannerG;
  if (dim < kBacknessOffset) return FeatureGroup::HeightG;
  if (dim < kPlaceOffset) return FeatureGroup::BacknessG;
  if (dim < kVoicingOffset) return FeatureGroup::PlaceG;
  return FeatureGroup::VoicingG;
}

inline bool is_consonant(Manner m) {
  return m != Manner::Silence && m != Manner::Vowel;
}

// Structured per-segment (or per-frame) feature state. Groups that do not
// apply to the manner class are nullopt. A consonant with nullopt place is
// "place unspecified" (glottals: the 5-class inventory has no glottal).
struct FeatureVector {
  Manner manner = Manner::Silence;
  std::optional<Height> height;
  std::optional<Backness> backness;
  std::optional<Place> place;
  std::optional<Voicing> voicing;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

inline bool place_unspecified(const FeatureVector& v) {
  return is_consonant(v.manner) && !v.place.has_value();
}

// Which groups a manner class activates. Voicing applies to everything but
// silence; vowel quality only to vowels; place only to consonants.
struct GatingMask {
  bool height = false;
  bool backness = false;
  bool place = false;
  bool voicing = false;

  friend bool operator==(const GatingMask&, const GatingMask&) = default;
};

inline GatingMask gating_mask(Manner m) {
  GatingMask mask;
  if (m == Manner::Silence) return mask;
  mask.voicing = true;
  if (m == Manner::Vowel) {
    mask.height = true;
    mask.backness = true;
  } else {
    mask.place = true;
  }
  return mask;
}

// Returns nullptr when the vector is well formed, else a description of the
// violated invariant.
inline const char* invariant_violation(const FeatureVector& v) {
  const GatingMask mask = gating_mask(v.manner);
  if (v.height.has_value() != mask.height)
    return mask.height ? "vowel requires a height value"
                       : "height set for a non-vowel manner";
  if (v.backness.has_value() != mask.backness)
    return mask.backness ? "vowel requires a backness value"
                         : "backness set for a non-vowel manner";
  if (v.place.has_value() && !mask.place)
    return "place set for a manner that does not take place";
  if (v.voicing.has_value() != mask.voicing)
    return mask.voicing ? "non-silence manner requires voicing"
                        : "voicing set for silence";
  return nullptr;
}

inline void validate(const FeatureVector& v, const std::string& context) {
  if (const char* why = invariant_violation(v))
    throw Error(ErrorKind::InvariantViolation, context + ": " + why);
}

using DenseVector = std::array<std::uint8_t, kNumDims>;

inline DenseVector to_dense(const FeatureVector& v) {
  DenseVector d{};
  d[kMannerOffset + static_cast<std::size_t>(v.manner)] = 1;
  if (v.height) d[kHeightOffset + static_cast<std::size_t>(*v.height)] = 1;
  if (v.backness)
    d[kBacknessOffset + static_cast<std::size_t>(*v.backness)] = 1;
  if (v.place) d[kPlaceOffset + static_cast<std::size_t>(*v.place)] = 1;
  if (v.voicing) d[kVoicingOffset + static_cast<std::size_t>(*v.voicing)] = 1;
  return d;
}

inline FeatureVector from_dense(const DenseVector& d) {
  auto pick = [&](std::size_t off, std::size_t size,
                  const char* group) -> std::optional<std::size_t> {
    std::optional<std::size_t> hit;
    for (std::size_t k = 0; k < size; ++k) {
      if (d[off + k] == 0) continue;
      if (d[off + k] != 1)
        throw Error(ErrorKind::InvariantViolation,
                    std::string("non-binary value in group ") + group);
      if (hit)
        throw Error(ErrorKind::InvariantViolation,
                    std::string("multiple active classes in group ") + group);
      hit = k;
    }
    return hit;
  };

  const auto manner = pick(kMannerOffset, kMannerSize, "manner");
  if (!manner)
    throw Error(ErrorKind::InvariantViolation, "no active manner class");
  FeatureVector v;
  v.manner = static_cast<Manner>(*manner);
  if (auto h = pick(kHeightOffset, kHeightSize, "height"))
    v.height = static_cast<Height>(*h);
  if (auto b = pick(kBacknessOffset, kBacknessSize, "backness"))
    v.backness = static_cast<Backness>(*b);
  if (auto p = pick(kPlaceOffset, kPlaceSize, "place"))
    v.place = static_cast<Place>(*p);
  if (auto w = pick(kVoicingOffset, kVoicingSize, "voicing"))
    v.voicing = static_cast<Voicing>(*w);
  validate(v, "dense vector");
  return v;
}

inline const FeatureVector& silence_vector() {
  static const FeatureVector v{};
  return v;
}

inline std::string_view manner_name(Manner m) {
  return kDimNames[kMannerOffset + static_cast<std::size_t>(m)];
}
inline std::string_view height_name(Height h) {
  return kDimNames[kHeightOffset + static_cast<std::size_t>(h)];
}
inline std::string_view backness_name(Backness b) {
  return kDimNames[kBacknessOffset + static_cast<std::size_t>(b)];
}
inline std::string_view place_name(Place p) {
  return kDimNames[kPlaceOffset + static_cast<std::size_t>(p)];
}
inline std::string_view voicing_name(Voicing v) {
  return kDimNames[kVoicingOffset + static_cast<std::size_t>(v)];
}

}  // namespace phonoq
