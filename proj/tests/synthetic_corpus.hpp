// tests/synthetic_corpus.hpp

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

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "corpusforge/wav.hpp"
#include "test_util.hpp"

namespace cftest {

// Twenty two-second clips: 12 clean (harmonic bursts over digital silence)
// and 8 corrupted (broadband noise, a noisy "music" head, or clipping),
// plus an oracle score file that rates exactly the clean clips above 4.
struct SyntheticCorpus {
  std::string root;
  std::string scores;
  std::string hypotheses;
  std::set<std::string> clean_ids;
  std::vector<std::string> all_ids;
};

inline Eigen::VectorXd voiced_bursts(Rng& rng, Eigen::Index n, int sr) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double f0 = rng.uniform(110.0, 220.0);
  const Eigen::Index burst = sr * 3 / 10, gap = sr / 5;
  for (Eigen::Index start = gap / 2; start + burst <= n; start += burst + gap) {
    for (Eigen::Index i = 0; i < burst; ++i) {
      const double t = static_cast<double>(i) / sr;
      const double env = std::sin(std::numbers::pi * static_cast<double>(i) / burst);
      double v = 0.0;
      for (int h = 1; h <= 4; ++h) v += std::sin(2.0 * std::numbers::pi * f0 * h * t) / h;
      x[start + i] = 0.25 * env * v;
    }
  }
  return x;
}

inline SyntheticCorpus write_synthetic_corpus(const fs::path& dir, std::uint64_t seed = 7) {
  const int sr = 16000;
  const Eigen::Index n = 2 * sr;
  Rng rng(seed);
  SyntheticCorpus c;
  c.root = (dir / "corpus").string();
  fs::create_directories(c.root);
  std::ostringstream scores, hyps;
  scores << "segment_id,scorer,score\n";
  const std::vector<std::string> words = {"alpha", "bravo", "charlie", "delta", "echo", "foxtrot"};
  for (int k = 0; k < 20; ++k) {
    char id[16];
    std::snprintf(id, sizeof id, "seg%02d", k);
    Eigen::VectorXd x = voiced_bursts(rng, n, sr);
    // Corrupted clips sit at indices 2, 4, 7, 9, 12, 14, 17, 19.
    const int kind = (k % 5 == 2 || k % 5 == 4) ? (k / 5) % 3 + 1 : 0;
    if (kind == 1) {
      x += rng.noise(n, 0.05);
    } else if (kind == 2) {
      x.head(sr) += rng.noise(sr, 0.2);
    } else if (kind == 3) {
      x = (x * 5.0).cwiseMax(-1.0).cwiseMin(1.0);
    }
    corpusforge::write_wav(c.root + "/" + id + ".wav", waveform(x, sr));
    std::string text;
    for (int w = 0; w < 4; ++w) text += (w ? " " : "") + words[static_cast<std::size_t>(rng.integer(0, 5))];
    write_file(fs::path(c.root) / (std::string(id) + ".txt"), text + "\n");
    write_file(fs::path(c.root) / (std::string(id) + ".meta"),
               "program_name: Synthetic Hour\nspeaker: Speaker " + std::to_string(k % 3) + "/host\n");
    hyps << "{\"segment_id\":\"" << id << "\",\"hypothesis_text\":\"" << text << "\"}\n";
    const double score = kind == 0 ? rng.uniform(4.05, 4.9) : rng.uniform(1.5, 3.9);
    scores << id << ",dnsmos," << score << "\n";
    if (kind == 0) c.clean_ids.insert(id);
    c.all_ids.push_back(id);
  }
  c.scores = (dir / "scores.csv").string();
  c.hypotheses = (dir / "hyps.jsonl").string();
  write_file(c.scores, scores.str());
  write_file(c.hypotheses, hyps.str());
  return c;
}

}  // namespace cftest
