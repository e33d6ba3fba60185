// include/corpusforge/eval/mcd.hpp

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
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "corpusforge/error.hpp"

namespace corpusforge::eval {

struct McdResult {
  double mean_db = 0.0;
  double std_db = 0.0;
  Eigen::Index n_frames_aligned = 0;
};

// (10 / ln 10) * sqrt(2): converts cepstral Euclidean distance to dB.
inline const double kMcdScale = 10.0 / std::numbers::ln10 * std::numbers::sqrt2;

// Distortion between two cepstral frames, coefficient 0 excluded.
template <typename A, typename B>
double frame_mcd(const Eigen::MatrixBase<A>& ref_frame, const Eigen::MatrixBase<B>& syn_frame) {
  const Eigen::Index d = ref_frame.size();
  if (d < 2) return 0.0;
  const double sq = (ref_frame.tail(d - 1).template cast<double>() -
                     syn_frame.tail(d - 1).template cast<double>())
                        .squaredNorm();
  return 10.0 / std::numbers::ln10 * std::sqrt(2.0 * sq);
}

using FramePairs = std::vector<std::pair<Eigen::Index, Eigen::Index>>;

// Minimum-total-cost warping path over steps (1,1), (1,0), (0,1) from the
// first frame pair to the last. Ties prefer the diagonal.
template <typename A, typename B>
FramePairs dtw_path(const Eigen::MatrixBase<A>& ref, const Eigen::MatrixBase<B>& syn) {
  const Eigen::Index n = ref.rows(), m = syn.rows();
  Eigen::MatrixXd local(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) local(i, j) = frame_mcd(ref.row(i), syn.row(j));

  const double inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Constant(n, m, inf);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      double best = (i == 0 && j == 0) ? 0.0 : inf;
      if (i > 0 && j > 0) best = std::min(best, acc(i - 1, j - 1));
      if (i > 0) best = std::min(best, acc(i - 1, j));
      if (j > 0) best = std::min(best, acc(i, j - 1));
      acc(i, j) = best + local(i, j);
    }

  FramePairs path;
  Eigen::Index i = n - 1, j = m - 1;
  path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && acc(i - 1, j - 1) <= acc(i - 1, j) && acc(i - 1, j - 1) <= acc(i, j - 1)) {
      --i;
      --j;
    } else if (i > 0 && (j == 0 || acc(i - 1, j) <= acc(i, j - 1))) {
      --i;
    } else {
      --j;
    }
    path.emplace_back(i, j);
  }
  return {path.rbegin(), path.rend()};
}

// Mean and population standard deviation of frame distortions over pairs
// chosen by DTW, or by index up to the shorter length when use_dtw is off.
template <typename A, typename B>
McdResult mcd(const Eigen::MatrixBase<A>& ref_cep, const Eigen::MatrixBase<B>& syn_cep,
              bool use_dtw = true) {
  if (ref_cep.cols() != syn_cep.cols())
    throw InputError("mcd: coefficient counts differ (" + std::to_string(ref_cep.cols()) +
                     " vs " + std::to_string(syn_cep.cols()) + ")");
  if (ref_cep.rows() == 0 || syn_cep.rows() == 0 || ref_cep.cols() == 0)
    throw InputError("mcd: empty cepstrum");

  FramePairs pairs;
  if (use_dtw) {
    pairs = dtw_path(ref_cep, syn_cep);
  } else {
    const Eigen::Index n = std::min(ref_cep.rows(), syn_cep.rows());
    for (Eigen::Index t = 0; t < n; ++t) pairs.emplace_back(t, t);
  }
  Eigen::VectorXd dist(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k)
    dist[static_cast<Eigen::Index>(k)] =
        frame_mcd(ref_cep.row(pairs[k].first), syn_cep.row(pairs[k].second));

  McdResult r;
  r.n_frames_aligned = dist.size();
  r.mean_db = dist.mean();
  r.std_db = std::sqrt((dist.array() - r.mean_db).square().mean());
  return r;
}

}  // namespace corpusforge::eval
