// include/corpusforge/dsp/stft.hpp

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
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "corpusforge/error.hpp"

namespace corpusforge::dsp {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

// Analysis parameters. Frames are centered with reflect padding of n_fft/2
// and windowed with a periodic Hann window of length `win`, zero-padded to
// n_fft.
struct StftConfig {
  int n_fft = 1024;
  int hop = 200;
  int win = 800;
  int sample_rate_hz = 16000;

  int n_bins() const { return n_fft / 2 + 1; }

  void validate() const {
    const bool pow2 = n_fft > 1 && (n_fft & (n_fft - 1)) == 0;
    if (!pow2) throw InputError("n_fft must be a power of two, got " + std::to_string(n_fft));
    if (!(0 < hop && hop <= win && win <= n_fft))
      throw InputError("STFT config requires 0 < hop <= win <= n_fft");
    if (sample_rate_hz <= 0) throw InputError("sample rate must be positive");
  }

  bool operator==(const StftConfig&) const = default;
};

// Frames x bins. Phase is present for analyses of real signals and absent
// for magnitudes recovered from mel spectra.
template <typename Scalar>
struct Spectrogram {
  Matrix<Scalar> magnitude;
  std::optional<Matrix<Scalar>> phase;
  StftConfig config;
  Eigen::Index signal_length = 0;

  Eigen::Index frames() const { return magnitude.rows(); }
  Eigen::Index bins() const { return magnitude.cols(); }

  ComplexMatrix<Scalar> complex_values() const {
    if (!phase) throw InputError("spectrogram has no phase");
    ComplexMatrix<Scalar> z(magnitude.rows(), magnitude.cols());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      z(i) = std::polar(magnitude(i), (*phase)(i));
    return z;
  }
};

template <typename Scalar>
Vector<Scalar> hann_window(int win, int n_fft) {
  Vector<Scalar> w = Vector<Scalar>::Zero(n_fft);
  const int offset = (n_fft - win) / 2;
  for (int k = 0; k < win; ++k)
    w[offset + k] = Scalar(0.5) - Scalar(0.5) * std::cos(Scalar(2) * std::numbers::pi_v<Scalar> *
                                                         Scalar(k) / Scalar(win));
  return w;
}

// Maps an index of the reflect-padded signal back onto [0, n).
inline Eigen::Index reflect_index(Eigen::Index i, Eigen::Index n) {
  if (n == 1) return 0;
  const Eigen::Index period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

inline Eigen::Index frame_count(Eigen::Index length, const StftConfig& cfg) {
  return 1 + length / cfg.hop;
}

template <typename Derived>
ComplexMatrix<typename Derived::Scalar> stft_complex(const Eigen::MatrixBase<Derived>& signal,
                                                     const StftConfig& cfg) {
  using Scalar = typename Derived::Scalar;
  cfg.validate();
  const Eigen::Index n = signal.size();
  if (n < cfg.win)
    throw InputError("signal shorter than the analysis window (" + std::to_string(n) + " < " +
                     std::to_string(cfg.win) + ")");
  const Vector<Scalar> window = hann_window<Scalar>(cfg.win, cfg.n_fft);
  const Eigen::Index pad = cfg.n_fft / 2;
  const Eigen::Index n_frames = frame_count(n, cfg);
  ComplexMatrix<Scalar> out(n_frames, cfg.n_bins());

  Eigen::FFT<Scalar> fft;
  fft.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum);
  std::vector<Scalar> frame(static_cast<std::size_t>(cfg.n_fft));
  std::vector<std::complex<Scalar>> spectrum;
  for (Eigen::Index t = 0; t < n_frames; ++t) {
    const Eigen::Index start = t * cfg.hop - pad;
    for (int k = 0; k < cfg.n_fft; ++k)
      frame[static_cast<std::size_t>(k)] = window[k] * signal(reflect_index(start + k, n));
    fft.fwd(spectrum, frame);
    for (int b = 0; b < cfg.n_bins(); ++b) out(t, b) = spectrum[static_cast<std::size_t>(b)];
  }
  return out;
}

// Least-squares inverse of stft_complex: each output sample is the
// window-weighted average of every padded position that maps onto it,
// including reflected positions.
template <typename Scalar>
Vector<Scalar> istft_complex(const ComplexMatrix<Scalar>& z, const StftConfig& cfg,
                             Eigen::Index length) {
  cfg.validate();
  if (z.cols() != cfg.n_bins())
    throw InputError("spectrogram has " + std::to_string(z.cols()) + " bins, config expects " +
                     std::to_string(cfg.n_bins()));
  if (length <= 0) throw InputError("istft output length must be positive");
  const Vector<Scalar> window = hann_window<Scalar>(cfg.win, cfg.n_fft);
  const Eigen::Index pad = cfg.n_fft / 2;
  Vector<Scalar> num = Vector<Scalar>::Zero(length);
  Vector<Scalar> den = Vector<Scalar>::Zero(length);

  Eigen::FFT<Scalar> fft;
  fft.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum);
  std::vector<std::complex<Scalar>> spectrum(static_cast<std::size_t>(cfg.n_bins()));
  std::vector<Scalar> frame;
  for (Eigen::Index t = 0; t < z.rows(); ++t) {
    for (int b = 0; b < cfg.n_bins(); ++b) spectrum[static_cast<std::size_t>(b)] = z(t, b);
    // A real signal has real DC and Nyquist bins.
    spectrum.front() = std::complex<Scalar>(spectrum.front().real(), 0);
    spectrum.back() = std::complex<Scalar>(spectrum.back().real(), 0);
    fft.inv(frame, spectrum, cfg.n_fft);
    const Eigen::Index start = t * cfg.hop - pad;
    for (int k = 0; k < cfg.n_fft; ++k) {
      const Scalar w = window[k];
      if (w == Scalar(0)) continue;
      const Eigen::Index pos = start + k;
      if (pos < -pad || pos >= length + pad) continue;
      const Eigen::Index src = reflect_index(pos, length);
      num[src] += w * frame[static_cast<std::size_t>(k)];
      den[src] += w * w;
    }
  }
  const Scalar tiny = std::numeric_limits<Scalar>::min();
  for (Eigen::Index i = 0; i < length; ++i) num[i] = den[i] > tiny ? num[i] / den[i] : Scalar(0);
  return num;
}

template <typename Derived>
Spectrogram<typename Derived::Scalar> stft(const Eigen::MatrixBase<Derived>& signal,
                                           const StftConfig& cfg) {
  using Scalar = typename Derived::Scalar;
  const ComplexMatrix<Scalar> z = stft_complex(signal, cfg);
  Spectrogram<Scalar> spec;
  spec.magnitude = z.cwiseAbs();
  spec.phase = z.unaryExpr([](const std::complex<Scalar>& c) { return std::arg(c); });
  spec.config = cfg;
  spec.signal_length = signal.size();
  return spec;
}

template <typename Scalar>
Vector<Scalar> istft(const Spectrogram<Scalar>& spec) {
  return istft_complex<Scalar>(spec.complex_values(), spec.config, spec.signal_length);
}

// Frobenius norm of (|z| - target) over the two-sided spectrum: interior
// bins stand for a conjugate pair and are counted twice.
template <typename Scalar>
Scalar two_sided_distance(const ComplexMatrix<Scalar>& z, const Matrix<Scalar>& target) {
  Scalar sum = 0;
  const Eigen::Index last = z.cols() - 1;
  for (Eigen::Index b = 0; b < z.cols(); ++b) {
    const Scalar weight = (b == 0 || b == last) ? Scalar(1) : Scalar(2);
    sum += weight * (z.col(b).cwiseAbs() - target.col(b)).squaredNorm();
  }
  return std::sqrt(sum);
}

template <typename Scalar>
Scalar two_sided_norm(const Matrix<Scalar>& mag) {
  Scalar sum = 0;
  const Eigen::Index last = mag.cols() - 1;
  for (Eigen::Index b = 0; b < mag.cols(); ++b) {
    const Scalar weight = (b == 0 || b == last) ? Scalar(1) : Scalar(2);
    sum += weight * mag.col(b).squaredNorm();
  }
  return std::sqrt(sum);
}

}  // namespace corpusforge::dsp
