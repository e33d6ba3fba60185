// include/corpusforge/eval/durations.hpp

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

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "corpusforge/error.hpp"

namespace corpusforge::eval {

struct DurationSeq {
  std::vector<int> durations;  // frames per input token

  int total() const { return std::accumulate(durations.begin(), durations.end(), 0); }
};

struct MonotonicPath {
  std::vector<Eigen::Index> token_of_frame;
  double weight = 0.0;
};

// Highest-weight path through a frames x tokens matrix that starts at token
// 0, ends at the last token, and advances by 0 or 1 token per frame.
// Among equal-weight paths the one with the earliest transitions wins.
template <typename Derived>
MonotonicPath monotonic_alignment(const Eigen::MatrixBase<Derived>& attention) {
  const Eigen::Index frames = attention.rows(), tokens = attention.cols();
  if (frames < 1 || tokens < 1) throw InputError("attention matrix must be non-empty");
  if (!attention.allFinite()) throw InputError("attention matrix has non-finite entries");
  if ((attention.array() < 0).any()) throw InputError("attention matrix has negative entries");
  if (frames < tokens)
    throw InputError("attention has " + std::to_string(frames) + " frames for " +
                     std::to_string(tokens) + " tokens; every token needs a frame");

  const double ninf = -std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best = Eigen::MatrixXd::Constant(frames, tokens, ninf);
  best(0, 0) = static_cast<double>(attention(0, 0));
  for (Eigen::Index t = 1; t < frames; ++t)
    for (Eigen::Index j = 0; j < tokens && j <= t; ++j) {
      double prev = best(t - 1, j);
      if (j > 0) prev = std::max(prev, best(t - 1, j - 1));
      if (prev > ninf) best(t, j) = prev + static_cast<double>(attention(t, j));
    }

  MonotonicPath path;
  path.weight = best(frames - 1, tokens - 1);
  path.token_of_frame.assign(static_cast<std::size_t>(frames), 0);
  Eigen::Index j = tokens - 1;
  for (Eigen::Index t = frames - 1; t >= 0; --t) {
    path.token_of_frame[static_cast<std::size_t>(t)] = j;
    if (t == 0) break;
    // Staying on this token while backtracking pushes the transition earlier.
    const bool can_stay = best(t - 1, j) > ninf;
    if (j > 0 && (!can_stay || best(t - 1, j - 1) > best(t - 1, j))) --j;
  }
  return path;
}

inline DurationSeq durations_from_path(const MonotonicPath& path, Eigen::Index tokens) {
  DurationSeq seq;
  seq.durations.assign(static_cast<std::size_t>(tokens), 0);
  for (Eigen::Index token : path.token_of_frame) ++seq.durations[static_cast<std::size_t>(token)];
  return seq;
}

template <typename Derived>
DurationSeq extract_durations(const Eigen::MatrixBase<Derived>& attention) {
  return durations_from_path(monotonic_alignment(attention), attention.cols());
}

}  // namespace corpusforge::eval
