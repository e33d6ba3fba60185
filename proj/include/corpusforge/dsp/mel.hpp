// include/corpusforge/dsp/mel.hpp

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
#include <cmath>
#include <string>

#include <Eigen/Core>
#include <Eigen/QR>

#include "corpusforge/dsp/stft.hpp"
#include "corpusforge/error.hpp"

namespace corpusforge::dsp {

inline constexpr double kLogFloor = 1e-10;

// HTK mel scale: m = 2595 log10(1 + f / 700).
template <typename Scalar>
Scalar hz_to_mel(Scalar hz) {
  if (!(hz >= Scalar(0))) throw InputError("hz_to_mel: frequency must be >= 0");
  return Scalar(2595) * std::log10(Scalar(1) + hz / Scalar(700));
}

template <typename Scalar>
Scalar mel_to_hz(Scalar mel) {
  if (!(mel >= Scalar(0))) throw InputError("mel_to_hz: mel value must be >= 0");
  return Scalar(700) * (std::pow(Scalar(10), mel / Scalar(2595)) - Scalar(1));
}

template <typename Scalar>
struct MelFilterbank {
  Matrix<Scalar> weights;        // n_mels x (n_fft/2 + 1)
  Matrix<Scalar> pseudo_inverse; // (n_fft/2 + 1) x n_mels
  Scalar f_min = 0;
  Scalar f_max = 0;
  int n_mels = 0;
  int n_fft = 0;
  int sample_rate_hz = 0;
};

// Triangular filters with centers uniformly spaced on the mel scale, each
// row scaled so its maximum is exactly 1.
template <typename Scalar = double>
MelFilterbank<Scalar> build_filterbank(int n_mels, Scalar f_min, Scalar f_max, int n_fft,
                                       int sample_rate_hz) {
  if (n_mels < 2) throw InputError("n_mels must be >= 2");
  if (n_fft < 2 || sample_rate_hz <= 0) throw InputError("invalid n_fft or sample rate");
  if (!(Scalar(0) <= f_min && f_min < f_max && f_max <= Scalar(sample_rate_hz) / 2))
    throw InputError("filterbank requires 0 <= f_min < f_max <= sr/2");

  const int n_bins = n_fft / 2 + 1;
  const Scalar mel_lo = hz_to_mel(f_min);
  const Scalar mel_hi = hz_to_mel(f_max);
  Vector<Scalar> edges(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i)
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * Scalar(i) / Scalar(n_mels + 1));

  MelFilterbank<Scalar> fb;
  fb.weights = Matrix<Scalar>::Zero(n_mels, n_bins);
  for (int m = 0; m < n_mels; ++m) {
    const Scalar lo = edges[m], center = edges[m + 1], hi = edges[m + 2];
    for (int b = 0; b < n_bins; ++b) {
      const Scalar f = Scalar(b) * Scalar(sample_rate_hz) / Scalar(n_fft);
      const Scalar rise = (f - lo) / (center - lo);
      const Scalar fall = (hi - f) / (hi - center);
      fb.weights(m, b) = std::max(Scalar(0), std::min(rise, fall));
    }
    const Scalar peak = fb.weights.row(m).maxCoeff();
    if (!(peak > Scalar(0)))
      throw InputError("mel filter " + std::to_string(m) +
                       " covers no FFT bin; raise n_fft or lower n_mels");
    fb.weights.row(m) /= peak;
  }
  fb.pseudo_inverse = fb.weights.completeOrthogonalDecomposition().pseudoInverse();
  fb.f_min = f_min;
  fb.f_max = f_max;
  fb.n_mels = n_mels;
  fb.n_fft = n_fft;
  fb.sample_rate_hz = sample_rate_hz;
  return fb;
}

enum class MelScale { kMagnitude, kPower };

// Frames x n_mels natural-log mel energies.
template <typename Scalar>
struct MelSpectrogram {
  Matrix<Scalar> values;
  MelScale scale = MelScale::kMagnitude;
  StftConfig config;

  Eigen::Index frames() const { return values.rows(); }
  Eigen::Index n_mels() const { return values.cols(); }
};

template <typename Scalar>
MelSpectrogram<Scalar> mel_spectrogram(const Spectrogram<Scalar>& spec,
                                       const MelFilterbank<Scalar>& fb,
                                       MelScale scale = MelScale::kMagnitude) {
  if (fb.weights.cols() != spec.magnitude.cols())
    throw InputError("mel_spectrogram: filterbank has " + std::to_string(fb.weights.cols()) +
                     " bins, spectrogram has " + std::to_string(spec.magnitude.cols()));
  MelSpectrogram<Scalar> mel;
  mel.scale = scale;
  mel.config = spec.config;
  const Matrix<Scalar> energy = scale == MelScale::kPower
                                    ? Matrix<Scalar>(spec.magnitude.cwiseAbs2())
                                    : spec.magnitude;
  mel.values = (energy * fb.weights.transpose())
                   .unaryExpr([](Scalar v) { return std::log(std::max(v, Scalar(kLogFloor))); });
  return mel;
}

// Linear magnitudes through the Moore-Penrose pseudo-inverse of the
// filterbank; negative estimates are clamped to zero.
template <typename Scalar>
Spectrogram<Scalar> invert_mel(const MelSpectrogram<Scalar>& mel,
                               const MelFilterbank<Scalar>& fb) {
  if (mel.values.cols() != fb.weights.rows())
    throw InputError("invert_mel: mel has " + std::to_string(mel.values.cols()) +
                     " channels, filterbank has " + std::to_string(fb.weights.rows()));
  Spectrogram<Scalar> spec;
  Matrix<Scalar> linear =
      (mel.values.array().exp().matrix() * fb.pseudo_inverse.transpose()).cwiseMax(Scalar(0));
  if (mel.scale == MelScale::kPower) linear = linear.cwiseSqrt();
  spec.magnitude = std::move(linear);
  spec.config = mel.config;
  spec.config.n_fft = fb.n_fft;
  spec.signal_length = mel.frames() > 0 ? (mel.frames() - 1) * mel.config.hop : 0;
  return spec;
}

}  // namespace corpusforge::dsp
