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

#include <cmath>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "phonoq/feature_table.hpp"
#include "phonoq/metrics.hpp"
#include "phonoq/rng.hpp"
#include "support/oracles.hpp"

using namespace phonoq;

namespace {

FeatureVector phone(const char* symbol) {
  return default_table().map_phone(symbol);
}

}  // namespace

TEST_CASE("perfect predictions count only true positives and negatives") {
  const std::vector<FeatureVector> refs = {phone("p"), phone("a"), phone("n")};
  const BinaryCounts c = count_features(refs, refs);
  CHECK(c.segments == 3);
  for (std::size_t d = 1; d < kNumDims; ++d) {
    CHECK(c.dims[d].fp == 0);
    CHECK(c.dims[d].fn == 0);
  }
  // dim 1 (stop): p only. dim 21 (voiced): a and n.
  CHECK(c.dims[1].tp == 1);
  CHECK(c.dims[1].tn == 2);
  CHECK(c.dims[21].tp == 2);
  CHECK(c.dims[20].tp == 1);  // voiceless: p
  CHECK(macro_f1(c, all21_dims()) < 1.0);  // absent dims are degenerate zeros

  // Restricted to dimensions that actually occur, the score is exact.
  // p: stop, labial, voiceless. a: vowel, low, central, voiced. n: nasal,
  // alveolar, voiced.
  const std::vector<std::size_t> present = {1, 2, 8, 11, 13, 15, 16, 20, 21};
  CHECK(macro_f1(c, present) == 1.0);
}

TEST_CASE("a silence prediction misses every reference dimension") {
  const std::vector<FeatureVector> refs = {phone("a")};
  const std::vector<FeatureVector> preds = {silence_vector()};
  const BinaryCounts c = count_features(refs, preds);
  // a: vowel (8), low (11), central (13), voiced (21) -> all fn.
  CHECK(c.dims[8].fn == 1);
  CHECK(c.dims[11].fn == 1);
  CHECK(c.dims[13].fn == 1);
  CHECK(c.dims[21].fn == 1);
  CHECK(c.dims[1].tn == 1);
  CHECK(c.dims[8].tp + c.dims[8].fp == 0);
}

TEST_CASE("silence references are rejected") {
  const std::vector<FeatureVector> refs = {silence_vector()};
  const std::vector<FeatureVector> preds = {phone("a")};
  CHECK_THROWS_AS(count_features(refs, preds), Error);
  try {
    count_features(refs, preds);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvariantViolation);
  }
}

TEST_CASE("length mismatch is rejected") {
  const std::vector<FeatureVector> refs = {phone("a"), phone("p")};
  const std::vector<FeatureVector> preds = {phone("a")};
  CHECK_THROWS_AS(count_features(refs, preds), Error);
  try {
    count_features(refs, preds);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
}

TEST_CASE("place dims are skipped when the reference place is unspecified") {
  // h has no place; the prediction's velar activation must not count.
  const std::vector<FeatureVector> refs = {phone("h")};
  const std::vector<FeatureVector> preds = {phone("x")};
  const BinaryCounts c = count_features(refs, preds);
  for (std::size_t d = kPlaceOffset; d < kPlaceOffset + kPlaceSize; ++d) {
    CHECK(c.dims[d].tp == 0);
    CHECK(c.dims[d].fp == 0);
    CHECK(c.dims[d].fn == 0);
    CHECK(c.dims[d].tn == 0);
  }
  // Non-place dims still count: fricative tp, voiceless tp.
  CHECK(c.dims[4].tp == 1);
  CHECK(c.dims[20].tp == 1);

  // The reverse direction does count place: ref x, pred h misses velar.
  const BinaryCounts r = count_features({phone("x")}, {phone("h")});
  CHECK(r.dims[17].fn == 1);
}

TEST_CASE("degenerate rates pin to zero and are flagged") {
  DimCounts none;  // never referenced, never predicted
  const DimRates r = rates_for(none);
  CHECK(r.precision == 0.0);
  CHECK(r.recall == 0.0);
  CHECK(r.f1 == 0.0);
  CHECK(r.degenerate);

  DimCounts only_fn;
  only_fn.fn = 3;
  const DimRates r2 = rates_for(only_fn);
  CHECK(r2.recall == 0.0);
  CHECK(r2.degenerate);  // precision was 0/0 and f1 collapsed

  DimCounts mixed;
  mixed.tp = 2;
  mixed.fp = 1;
  mixed.fn = 2;
  const DimRates r3 = rates_for(mixed);
  CHECK_FALSE(r3.degenerate);
  CHECK(r3.precision == Catch::Approx(2.0 / 3.0));
  CHECK(r3.recall == Catch::Approx(0.5));
  CHECK(r3.f1 == Catch::Approx(2.0 * (2.0 / 3.0) * 0.5 / (2.0 / 3.0 + 0.5)));
}

TEST_CASE("dimension subsets") {
  CHECK(all21_dims().size() == 21);
  CHECK(all21_dims().front() == 1);
  CHECK(all21_dims().back() == 21);
  CHECK(shared12_dims() ==
        std::vector<std::size_t>{1, 2, 3, 4, 7, 8, 15, 16, 17, 19, 20, 21});

  CHECK_THROWS_AS(validate_dims({}), Error);
  CHECK_THROWS_AS(validate_dims({0}), Error);   // silence is not scoreable
  CHECK_THROWS_AS(validate_dims({22}), Error);
  CHECK_NOTHROW(validate_dims({1, 21}));
}

TEST_CASE("group and vowel scores honor the subset") {
  const std::vector<FeatureVector> refs = {phone("a"), phone("i"), phone("p")};
  const std::vector<FeatureVector> preds = {phone("a"), phone("e"), phone("b")};
  const BinaryCounts c = count_features(refs, preds);

  const auto manner = group_f1(c, FeatureGroup::MannerG, all21_dims());
  REQUIRE(manner.has_value());

  // A subset with no height dims leaves the height group empty.
  CHECK_FALSE(group_f1(c, FeatureGroup::HeightG, shared12_dims()).has_value());
  CHECK_FALSE(vowel_f1(c, shared12_dims()).has_value());
  CHECK(vowel_f1(c, all21_dims()).has_value());

  // vowel_f1 is the mean of the two vowel quality groups.
  const auto h = group_f1(c, FeatureGroup::HeightG, all21_dims());
  const auto b = group_f1(c, FeatureGroup::BacknessG, all21_dims());
  CHECK(*vowel_f1(c, all21_dims()) == Catch::Approx((*h + *b) / 2.0));
}

TEST_CASE("counts and rates match the brute-force oracle") {
  const auto pool = oracle::all_valid_vectors();
  Rng rng(derive_seed(4242, 6, 0));

  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    std::vector<FeatureVector> refs, preds;
    for (std::size_t i = 0; i < n; ++i) {
      FeatureVector r = pool[rng.below(pool.size())];
      while (r.manner == Manner::Silence) r = pool[rng.below(pool.size())];
      refs.push_back(r);
      preds.push_back(pool[rng.below(pool.size())]);  // silence allowed
    }

    const BinaryCounts got = count_features(refs, preds);
    const oracle::OracleCounts want = oracle::score(refs, preds);

    for (std::size_t d = 1; d < kNumDims; ++d) {
      INFO("trial " << trial << " dim " << d);
      REQUIRE(got.dims[d].tp == want.tp[d]);
      REQUIRE(got.dims[d].fp == want.fp[d]);
      REQUIRE(got.dims[d].fn == want.fn[d]);
      REQUIRE(got.dims[d].tn == want.tn[d]);
      const DimRates rates = rates_for(got.dims[d]);
      const double op = oracle::safe_div(want.tp[d], want.tp[d] + want.fp[d]);
      const double orr = oracle::safe_div(want.tp[d], want.tp[d] + want.fn[d]);
      REQUIRE(std::abs(rates.precision - op) < 1e-9);
      REQUIRE(std::abs(rates.recall - orr) < 1e-9);
      REQUIRE(std::abs(rates.f1 - oracle::oracle_f1(want, d)) < 1e-9);
    }
    REQUIRE(std::abs(macro_f1(got, all21_dims()) -
                     oracle::oracle_macro(want, all21_dims())) < 1e-9);
    REQUIRE(std::abs(macro_f1(got, shared12_dims()) -
                     oracle::oracle_macro(want, shared12_dims())) < 1e-9);
  }
}

TEST_CASE("merge accumulates counts") {
  const std::vector<FeatureVector> a = {phone("p")};
  const std::vector<FeatureVector> b = {phone("a"), phone("n")};
  BinaryCounts total = count_features(a, a);
  total.merge(count_features(b, b));
  const BinaryCounts direct = count_features({phone("p"), phone("a"),
                                              phone("n")},
                                             {phone("p"), phone("a"),
                                              phone("n")});
  CHECK(total.segments == direct.segments);
  for (std::size_t d = 1; d < kNumDims; ++d) {
    CHECK(total.dims[d].tp == direct.dims[d].tp);
    CHECK(total.dims[d].tn == direct.dims[d].tn);
  }
}
