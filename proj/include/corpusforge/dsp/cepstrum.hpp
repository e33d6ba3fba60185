// include/corpusforge/dsp/cepstrum.hpp

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
#include <numbers>

#include "corpusforge/dsp/mel.hpp"

namespace corpusforge::dsp {

// Orthonormal DCT-II basis, n_coef x n.
template <typename Scalar>
Matrix<Scalar> dct_matrix(int n_coef, int n) {
  Matrix<Scalar> basis(n_coef, n);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int k = 0; k < n_coef; ++k) {
    const Scalar scale = k == 0 ? std::sqrt(Scalar(1) / Scalar(n)) : std::sqrt(Scalar(2) / Scalar(n));
    for (int i = 0; i < n; ++i)
      basis(k, i) = scale * std::cos(pi * Scalar(k) * (Scalar(2 * i + 1)) / Scalar(2 * n));
  }
  return basis;
}

// Coefficients 0..n_coef-1 of each log-mel frame; coefficient 0 is energy.
template <typename Derived>
Matrix<typename Derived::Scalar> mel_cepstrum(const Eigen::MatrixBase<Derived>& log_mel,
                                              int n_coef) {
  using Scalar = typename Derived::Scalar;
  const auto n_mels = static_cast<int>(log_mel.cols());
  if (n_coef < 1 || n_coef > n_mels)
    throw InputError("mel_cepstrum: n_coef must be in [1, n_mels=" + std::to_string(n_mels) + "]");
  return log_mel * dct_matrix<Scalar>(n_coef, n_mels).transpose();
}

template <typename Scalar>
Matrix<Scalar> mel_cepstrum(const MelSpectrogram<Scalar>& mel, int n_coef) {
  return mel_cepstrum(mel.values, n_coef);
}

// Inverse of mel_cepstrum when n_coef == n_mels; otherwise the truncated
// reconstruction.
template <typename Derived>
Matrix<typename Derived::Scalar> inverse_mel_cepstrum(const Eigen::MatrixBase<Derived>& cep,
                                                      int n_mels) {
  using Scalar = typename Derived::Scalar;
  return cep * dct_matrix<Scalar>(static_cast<int>(cep.cols()), n_mels);
}

}  // namespace corpusforge::dsp
