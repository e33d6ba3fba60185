// include/corpusforge/eval/align.hpp

// Copyright 2026  The CorpusForge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "corpusforge/error.hpp"

namespace corpusforge::eval {

enum class EditOp { kMatch, kSubstitution, kInsertion, kDeletion };

struct AlignedPair {
  static constexpr std::ptrdiff_t kNone = -1;
  EditOp op;
  std::ptrdiff_t ref_index;  // kNone for insertions
  std::ptrdiff_t hyp_index;  // kNone for deletions

  bool operator==(const AlignedPair&) const = default;
};

struct AlignmentResult {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t ref_len = 0;
  std::vector<AlignedPair> path;

  std::size_t errors() const { return substitutions + insertions + deletions; }
};

// (S + I + D) / ref_len as a fraction.
inline double error_rate(const AlignmentResult& ar) {
  if (ar.ref_len == 0) throw InputError("error_rate: reference length is zero");
  return static_cast<double>(ar.errors()) / static_cast<double>(ar.ref_len);
}

// Percentage with fixed decimals, e.g. 0.039 -> "3.9".
std::string format_percent(double fraction, int decimals = 1);

// Unit-cost Levenshtein alignment of two random-access sequences. The
// backtrace runs from the end and prefers match/substitution, then
// deletion, then insertion.
template <typename Seq>
AlignmentResult align(const Seq& ref, const Seq& hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  if (n == 0) throw InputError("align: reference is empty");
  const std::size_t stride = m + 1;
  std::vector<std::size_t> cost((n + 1) * stride);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return cost[i * stride + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }

  AlignmentResult ar;
  ar.ref_len = n;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        ar.path.push_back({same ? EditOp::kMatch : EditOp::kSubstitution,
                           static_cast<std::ptrdiff_t>(i - 1), static_cast<std::ptrdiff_t>(j - 1)});
        if (!same) ++ar.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ar.path.push_back({EditOp::kDeletion, static_cast<std::ptrdiff_t>(i - 1), AlignedPair::kNone});
      ++ar.deletions;
      --i;
    } else {
      ar.path.push_back({EditOp::kInsertion, AlignedPair::kNone, static_cast<std::ptrdiff_t>(j - 1)});
      ++ar.insertions;
      --j;
    }
  }
  std::reverse(ar.path.begin(), ar.path.end());
  return ar;
}

// Edit distance normalized by the longer sequence; 0 when both are empty.
template <typename Seq>
double normalized_edit_distance(const Seq& a, const Seq& b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  if (a.size() == 0) return 1.0;
  return static_cast<double>(align(a, b).errors()) / static_cast<double>(longest);
}

}  // namespace corpusforge::eval
