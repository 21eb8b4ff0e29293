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

#include <algorithm>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "phonoq/features.hpp"
#include "support/oracles.hpp"

using namespace phonoq;

TEST_CASE("dimension layout is pinned") {
  STATIC_REQUIRE(kNumDims == 22);
  CHECK(kMannerOffset == 0);
  CHECK(kMannerSize == 9);
  CHECK(kHeightOffset == 9);
  CHECK(kHeightSize == 3);
  CHECK(kBacknessOffset == 12);
  CHECK(kBacknessSize == 3);
  CHECK(kPlaceOffset == 15);
  CHECK(kPlaceSize == 5);
  CHECK(kVoicingOffset == 20);
  CHECK(kVoicingSize == 2);
  CHECK(kDimNames.size() == 22);
  CHECK(kDimNames[0] == "silence");
  CHECK(kDimNames[8] == "vowel");
  CHECK(kDimNames[9] == "high");
  CHECK(kDimNames[14] == "back");
  CHECK(kDimNames[15] == "labial");
  CHECK(kDimNames[19] == "postalveolar");
  CHECK(kDimNames[21] == "voiced");
}

TEST_CASE("gating mask matches manner class") {
  CHECK(gating_mask(Manner::Silence) == GatingMask{});
  const GatingMask vowel = gating_mask(Manner::Vowel);
  CHECK(vowel.height);
  CHECK(vowel.backness);
  CHECK_FALSE(vowel.place);
  CHECK(vowel.voicing);
  for (Manner m : {Manner::Stop, Manner::Nasal, Manner::Rhotic,
                   Manner::Fricative, Manner::Affricate, Manner::Approximant,
                   Manner::Lateral}) {
    const GatingMask c = gating_mask(m);
    CHECK_FALSE(c.height);
    CHECK_FALSE(c.backness);
    CHECK(c.place);
    CHECK(c.voicing);
  }
}

TEST_CASE("exactly 103 structurally valid vectors") {
  const auto all = oracle::all_valid_vectors();
  REQUIRE(all.size() == 103);
  for (const auto& v : all) {
    INFO("manner " << static_cast<int>(v.manner));
    CHECK(invariant_violation(v) == nullptr);
  }
  // Distinct as dense encodings too.
  std::set<DenseVector> seen;
  for (const auto& v : all) seen.insert(to_dense(v));
  CHECK(seen.size() == 103);
}

TEST_CASE("dense round trip preserves every valid vector") {
  for (const auto& v : oracle::all_valid_vectors()) {
    const DenseVector d = to_dense(v);
    // One manner bit, at most one bit per secondary group.
    int manner_bits = 0;
    for (std::size_t k = 0; k < kMannerSize; ++k) manner_bits += d[k];
    CHECK(manner_bits == 1);
    CHECK(from_dense(d) == v);
  }
}

TEST_CASE("invariant violations are detected") {
  FeatureVector v;

  SECTION("vowel without height") {
    v.manner = Manner::Vowel;
    v.backness = Backness::Front;
    v.voicing = Voicing::Voiced;
    CHECK(invariant_violation(v) != nullptr);
  }
  SECTION("consonant with height") {
    v.manner = Manner::Stop;
    v.height = Height::High;
    v.voicing = Voicing::Voiceless;
    CHECK(invariant_violation(v) != nullptr);
  }
  SECTION("vowel with place") {
    v.manner = Manner::Vowel;
    v.height = Height::Low;
    v.backness = Backness::Central;
    v.place = Place::Velar;
    v.voicing = Voicing::Voiced;
    CHECK(invariant_violation(v) != nullptr);
  }
  SECTION("silence with voicing") {
    v.manner = Manner::Silence;
    v.voicing = Voicing::Voiced;
    CHECK(invariant_violation(v) != nullptr);
  }
  SECTION("consonant without voicing") {
    v.manner = Manner::Fricative;
    v.place = Place::Alveolar;
    CHECK(invariant_violation(v) != nullptr);
  }
  SECTION("validate throws with context") {
    v.manner = Manner::Silence;
    v.voicing = Voicing::Voiced;
    CHECK_THROWS_AS(validate(v, "unit"), Error);
    try {
      validate(v, "unit");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvariantViolation);
      CHECK(std::string(e.what()).find("unit") != std::string::npos);
    }
  }
}

TEST_CASE("from_dense rejects malformed encodings") {
  SECTION("no manner bit") {
    DenseVector d{};
    CHECK_THROWS_AS(from_dense(d), Error);
  }
  SECTION("two manner bits") {
    DenseVector d{};
    d[1] = 1;
    d[2] = 1;
    d[20] = 1;
    CHECK_THROWS_AS(from_dense(d), Error);
  }
  SECTION("two height bits") {
    DenseVector d = to_dense([] {
      FeatureVector v;
      v.manner = Manner::Vowel;
      v.height = Height::High;
      v.backness = Backness::Front;
      v.voicing = Voicing::Voiced;
      return v;
    }());
    d[10] = 1;  // second height bit
    CHECK_THROWS_AS(from_dense(d), Error);
  }
  SECTION("non-binary cell") {
    DenseVector d{};
    d[0] = 2;
    CHECK_THROWS_AS(from_dense(d), Error);
  }
  SECTION("structurally inconsistent combination") {
    DenseVector d{};
    d[static_cast<std::size_t>(Manner::Stop)] = 1;
    d[9] = 1;  // height on a stop
    d[20] = 1;
    CHECK_THROWS_AS(from_dense(d), Error);
  }
}

TEST_CASE("silence vector is all-off except manner") {
  const FeatureVector s = silence_vector();
  CHECK(s.manner == Manner::Silence);
  CHECK_FALSE(s.height);
  CHECK_FALSE(s.backness);
  CHECK_FALSE(s.place);
  CHECK_FALSE(s.voicing);
  const DenseVector d = to_dense(s);
  CHECK(d[0] == 1);
  CHECK(std::count(d.begin(), d.end(), 1) == 1);
}

TEST_CASE("place_unspecified only for consonants lacking place") {
  FeatureVector glottal;
  glottal.manner = Manner::Fricative;
  glottal.voicing = Voicing::Voiceless;
  CHECK(place_unspecified(glottal));

  glottal.place = Place::Velar;
  CHECK_FALSE(place_unspecified(glottal));

  CHECK_FALSE(place_unspecified(silence_vector()));

  FeatureVector vowel;
  vowel.manner = Manner::Vowel;
  vowel.height = Height::Mid;
  vowel.backness = Backness::Back;
  vowel.voicing = Voicing::Voiced;
  CHECK_FALSE(place_unspecified(vowel));
}
