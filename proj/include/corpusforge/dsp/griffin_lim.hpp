// include/corpusforge/dsp/griffin_lim.hpp

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

#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "corpusforge/dsp/stft.hpp"

namespace corpusforge::dsp {

struct GriffinLimOptions {
  enum class Init { kZeroPhase, kRandomPhase };
  Init init = Init::kZeroPhase;
  std::uint64_t seed = 0;  // used by kRandomPhase only
  bool record_inconsistency = false;
};

template <typename Scalar>
struct GriffinLimResult {
  Vector<Scalar> signal;
  // ||STFT(x_k)| - mag| for k = 0..n_iter when recorded.
  std::vector<Scalar> inconsistency;
};

// Classic alternating projection: x <- istft(mag * exp(i angle(stft(x)))).
// Deterministic for a given (mag, n_iter, cfg, options).
template <typename Scalar>
GriffinLimResult<Scalar> griffin_lim(const Matrix<Scalar>& mag, int n_iter, const StftConfig& cfg,
                                     Eigen::Index length,
                                     const GriffinLimOptions& options = {}) {
  cfg.validate();
  if (n_iter < 0) throw InputError("griffin_lim: n_iter must be >= 0");
  if (mag.cols() != cfg.n_bins()) throw InputError("griffin_lim: bin count does not match n_fft");
  if (mag.rows() != frame_count(length, cfg))
    throw InputError("griffin_lim: frame count does not match the requested length");
  if ((mag.array() < Scalar(0)).any() || !mag.allFinite())
    throw InputError("griffin_lim: magnitudes must be finite and nonnegative");

  ComplexMatrix<Scalar> z = mag.template cast<std::complex<Scalar>>();
  if (options.init == GriffinLimOptions::Init::kRandomPhase) {
    std::mt19937_64 rng(options.seed);
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const Scalar u = Scalar(rng() >> 11) * Scalar(0x1.0p-53);
      z(i) = std::polar(mag(i), two_pi * u);
    }
  }

  GriffinLimResult<Scalar> result;
  result.signal = istft_complex<Scalar>(z, cfg, length);
  for (int k = 0; k <= n_iter; ++k) {
    if (k == n_iter && !options.record_inconsistency) break;
    const ComplexMatrix<Scalar> estimate = stft_complex(result.signal, cfg);
    if (options.record_inconsistency)
      result.inconsistency.push_back(two_sided_distance<Scalar>(estimate, mag));
    if (k == n_iter) break;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const Scalar a = std::abs(estimate(i));
      z(i) = a > Scalar(0) ? estimate(i) * (mag(i) / a) : std::complex<Scalar>(mag(i), 0);
    }
    result.signal = istft_complex<Scalar>(z, cfg, length);
  }
  return result;
}

template <typename Scalar>
Scalar relative_spectral_error(const Vector<Scalar>& signal, const Matrix<Scalar>& mag,
                               const StftConfig& cfg) {
  const ComplexMatrix<Scalar> z = stft_complex(signal, cfg);
  const Scalar norm = two_sided_norm<Scalar>(mag);
  return norm > Scalar(0) ? two_sided_distance<Scalar>(z, mag) / norm : Scalar(0);
}

}  // namespace corpusforge::dsp
