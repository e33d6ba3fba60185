// tests/test_util.hpp

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
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include <Eigen/Dense>

#include "corpusforge/wav.hpp"

namespace cftest {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = fs::temp_directory_path() /
            ("cftest-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Small deterministic generator helpers. Uniform draws go through
// generate_canonical-free arithmetic so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t bits() { return gen_(); }
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(double p = 0.5) { return uniform() < p; }
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * uniform());
  }
  Eigen::VectorXd noise(Eigen::Index n, double scale = 1.0) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * normal();
    return v;
  }
  Eigen::MatrixXd matrix(Eigen::Index r, Eigen::Index c, double lo = 0.0, double hi = 1.0) {
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

// Plain recursive Levenshtein distance.
template <typename Seq>
std::size_t brute_edit_distance(const Seq& a, std::size_t i, const Seq& b, std::size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  const std::size_t sub = brute_edit_distance(a, i + 1, b, j + 1) + (a[i] == b[j] ? 0 : 1);
  const std::size_t del = brute_edit_distance(a, i + 1, b, j) + 1;
  const std::size_t ins = brute_edit_distance(a, i, b, j + 1) + 1;
  return std::min({sub, del, ins});
}

template <typename Seq>
std::size_t brute_edit_distance(const Seq& a, const Seq& b) {
  return brute_edit_distance(a, 0, b, 0);
}

// Maximum of sum_t A(t, j(t)) over every path with j(0) = 0,
// j(T-1) = K-1 and steps of 0 or +1, by explicit enumeration.
inline double brute_monotone_max(const Eigen::MatrixXd& a) {
  const Eigen::Index frames = a.rows(), tokens = a.cols();
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(Eigen::Index, Eigen::Index, double)> walk = [&](Eigen::Index t, Eigen::Index j,
                                                                    double acc) {
    acc += a(t, j);
    if (t == frames - 1) {
      if (j == tokens - 1) best = std::max(best, acc);
      return;
    }
    walk(t + 1, j, acc);
    if (j + 1 < tokens) walk(t + 1, j + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

inline Eigen::VectorXd tone(double freq_hz, double amplitude, Eigen::Index n, int sr = 16000,
                            double phase = 0.0) {
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i)
    x[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / sr + phase);
  return x;
}

inline corpusforge::Waveform waveform(Eigen::VectorXd samples, int sr = 16000) {
  corpusforge::Waveform w;
  w.samples = std::move(samples);
  w.sample_rate_hz = sr;
  return w;
}

}  // namespace cftest
