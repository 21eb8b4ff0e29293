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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "phonoq/error.hpp"

namespace phonoq {

enum class EditOp : std::uint8_t { Match, Substitute, Delete, Insert };

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

struct EditStep {
  EditOp op = EditOp::Match;
  std::size_t ref_index = kNoIndex;  // valid except for Insert
  std::size_t hyp_index = kNoIndex;  // valid except for Delete

  friend bool operator==(const EditStep&, const EditStep&) = default;
};

struct EditScript {
  std::vector<EditStep> steps;
  std::size_t matches = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;

  std::size_t cost() const { return substitutions + deletions + insertions; }
};

// Minimum-cost alignment under unit costs. When several optimal paths
// exist, the backtrace prefers match, then substitute, then delete, then
// insert, so the script is deterministic.
inline EditScript align(const std::vector<std::string>& ref,
                        const std::vector<std::string>& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  std::vector<std::size_t> dp((n + 1) * (m + 1));
  auto at = [m](std::size_t i, std::size_t j) { return i * (m + 1) + j; };
  for (std::size_t i = 0; i <= n; ++i) dp[at(i, 0)] = i;
  for (std::size_t j = 0; j <= m; ++j) dp[at(0, j)] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub =
          dp[at(i - 1, j - 1)] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const std::size_t del = dp[at(i - 1, j)] + 1;
      const std::size_t ins = dp[at(i, j - 1)] + 1;
      std::size_t best = sub;
      if (del < best) best = del;
      if (ins < best) best = ins;
      dp[at(i, j)] = best;
    }
  }

  EditScript script;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::size_t cur = dp[at(i, j)];
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        cur == dp[at(i - 1, j - 1)]) {
      script.steps.push_back({EditOp::Match, i - 1, j - 1});
      ++script.matches;
      --i;
      --j;
    } else if (i > 0 && j > 0 && ref[i - 1] != hyp[j - 1] &&
               cur == dp[at(i - 1, j - 1)] + 1) {
      script.steps.push_back({EditOp::Substitute, i - 1, j - 1});
      ++script.substitutions;
      --i;
      --j;
    } else if (i > 0 && cur == dp[at(i - 1, j)] + 1) {
      script.steps.push_back({EditOp::Delete, i - 1, kNoIndex});
      ++script.deletions;
      --i;
    } else {
      script.steps.push_back({EditOp::Insert, kNoIndex, j - 1});
      ++script.insertions;
      --j;
    }
  }
  std::reverse(script.steps.begin(), script.steps.end());
  return script;
}

// Phone error rate: (S + D + I) / |ref|.
inline double per(const std::vector<std::string>& ref,
                  const std::vector<std::string>& hyp) {
  if (ref.empty())
    throw Error(ErrorKind::EmptyReference,
                "phone error rate over an empty reference");
  const EditScript script = align(ref, hyp);
  return static_cast<double>(script.cost()) / static_cast<double>(ref.size());
}

}  // namespace phonoq
