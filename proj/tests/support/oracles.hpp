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
//
// Deliberately independent reference implementations used to cross-check
// the library. They share no code with the production paths: the scorer
// rebuilds active-dimension sets from the enums by hand, and the edit
// distance is a memoized recursion instead of a DP table.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phonoq/features.hpp"
#include "phonoq/metrics.hpp"
#include "phonoq/rng.hpp"

namespace oracle {

// Active dimension indices of a vector, derived by hand from the canonical
// ordering: 9 manners, 3 heights, 3 backnesses, 5 places, 2 voicings.
inline std::vector<int> active_dims(const phonoq::FeatureVector& v) {
  std::vector<int> out;
  out.push_back(static_cast<int>(v.manner));
  if (v.height) out.push_back(9 + static_cast<int>(*v.height));
  if (v.backness) out.push_back(12 + static_cast<int>(*v.backness));
  if (v.place) out.push_back(15 + static_cast<int>(*v.place));
  if (v.voicing) out.push_back(20 + static_cast<int>(*v.voicing));
  return out;
}

struct OracleCounts {
  std::array<long, 22> tp{}, fp{}, fn{}, tn{};
};

// Brute-force per-dimension confusion counts: for every segment and every
// scored dimension, membership is tested against the hand-built active
// sets. Place dimensions (15..19) are skipped entirely for consonant
// references without a place value.
inline OracleCounts score(const std::vector<phonoq::FeatureVector>& refs,
                          const std::vector<phonoq::FeatureVector>& preds) {
  OracleCounts c;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const auto ra = active_dims(refs[i]);
    const auto pa = active_dims(preds[i]);
    const bool consonant = refs[i].manner != phonoq::Manner::Silence &&
                           refs[i].manner != phonoq::Manner::Vowel;
    const bool skip_place = consonant && !refs[i].place;
    for (int d = 1; d < 22; ++d) {
      if (skip_place && d >= 15 && d <= 19) continue;
      bool r = false, p = false;
      for (int x : ra) r = r || (x == d);
      for (int x : pa) p = p || (x == d);
      if (r && p) ++c.tp[d];
      if (!r && p) ++c.fp[d];
      if (r && !p) ++c.fn[d];
      if (!r && !p) ++c.tn[d];
    }
  }
  return c;
}

inline double safe_div(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

inline double oracle_f1(const OracleCounts& c, int d) {
  const double p = safe_div(c.tp[d], c.tp[d] + c.fp[d]);
  const double r = safe_div(c.tp[d], c.tp[d] + c.fn[d]);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

inline double oracle_macro(const OracleCounts& c,
                           const std::vector<std::size_t>& dims) {
  double sum = 0.0;
  for (std::size_t d : dims) sum += oracle_f1(c, static_cast<int>(d));
  return sum / static_cast<double>(dims.size());
}

// Plain memoized recursion for Levenshtein cost.
inline std::size_t edit_distance(const std::vector<std::string>& a,
                                 const std::vector<std::string>& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  struct Solver {
    const std::vector<std::string>& a;
    const std::vector<std::string>& b;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t>& memo;

    std::size_t solve(std::size_t i, std::size_t j) {
      if (i == a.size()) return b.size() - j;
      if (j == b.size()) return a.size() - i;
      const auto key = std::make_pair(i, j);
      const auto it = memo.find(key);
      if (it != memo.end()) return it->second;
      std::size_t best = solve(i + 1, j + 1) + (a[i] == b[j] ? 0 : 1);
      best = std::min(best, solve(i + 1, j) + 1);
      best = std::min(best, solve(i, j + 1) + 1);
      memo[key] = best;
      return best;
    }
  } solver{a, b, memo};
  return solver.solve(0, 0);
}

// All structurally valid feature vectors: silence, 7 consonant manners x
// (5 places + unspecified) x 2 voicings, and 3x3 vowels x 2 voicings.
// 1 + 84 + 18 = 103 total.
inline std::vector<phonoq::FeatureVector> all_valid_vectors() {
  using namespace phonoq;
  std::vector<FeatureVector> out;
  out.push_back(silence_vector());
  const Manner consonants[] = {Manner::Stop,      Manner::Nasal,
                               Manner::Rhotic,    Manner::Fricative,
                               Manner::Affricate, Manner::Approximant,
                               Manner::Lateral};
  for (Manner m : consonants)
    for (int place = -1; place < 5; ++place)
      for (int voi = 0; voi < 2; ++voi) {
        FeatureVector v;
        v.manner = m;
        if (place >= 0) v.place = static_cast<Place>(place);
        v.voicing = static_cast<Voicing>(voi);
        out.push_back(v);
      }
  for (int h = 0; h < 3; ++h)
    for (int b = 0; b < 3; ++b)
      for (int voi = 0; voi < 2; ++voi) {
        FeatureVector v;
        v.manner = Manner::Vowel;
        v.height = static_cast<Height>(h);
        v.backness = static_cast<Backness>(b);
        v.voicing = static_cast<Voicing>(voi);
        out.push_back(v);
      }
  return out;
}

}  // namespace oracle
