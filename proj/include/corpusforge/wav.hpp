// include/corpusforge/wav.hpp

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

#include <string>

#include <Eigen/Core>

#include "corpusforge/error.hpp"

namespace corpusforge {

struct Waveform {
  Eigen::VectorXd samples;  // in [-1, 1]
  int sample_rate_hz = 16000;

  Eigen::Index size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

enum class WavErrorCode { kUnreadable, kNonMono, kUnsupportedEncoding };

class WavError : public Error {
 public:
  WavError(WavErrorCode code, const std::string& what)
      : Error(code == WavErrorCode::kUnreadable ? ErrorKind::kIo : ErrorKind::kInput, what),
        code_(code) {}
  WavErrorCode code() const noexcept { return code_; }

 private:
  WavErrorCode code_;
};

// PCM16 mono RIFF/WAVE. Samples are int16 / 32768.
Waveform load_wav(const std::string& path);

// Samples in [start_s, end_s) of a file; the range is clamped to the file.
Waveform load_wav_range(const std::string& path, double start_s, double end_s);

// Writes PCM16 mono; samples are clipped to [-1, 1) and rounded.
void write_wav(const std::string& path, const Waveform& wave);

}  // namespace corpusforge
