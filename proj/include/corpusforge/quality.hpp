// include/corpusforge/quality.hpp

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

#include <optional>
#include <string>
#include <vector>

#include "corpusforge/corpus.hpp"
#include "corpusforge/wav.hpp"

namespace corpusforge::quality {

// One row of a `segment_id,scorer,score` CSV; score is MOS-like in [1,5].
struct ScoreRow {
  std::string segment_id;
  std::string scorer;
  double score = 0.0;
};

// Rejects out-of-range scores and repeated (segment_id, scorer) pairs.
std::vector<ScoreRow> parse_score_csv(const std::string& text, const std::string& name = "<scores>");
std::vector<ScoreRow> read_score_file(const std::string& path);

struct IngestResult {
  CorpusManifest manifest;
  std::vector<std::string> warnings;
};

// Unknown segment ids are all reported in one InputError.
IngestResult ingest_scores(const CorpusManifest& manifest, const std::vector<ScoreRow>& rows);

// 10 log10(p90 / p10) of frame mean-square energies, capped at 100 dB.
// Needs at least 10 frames; an all-zero signal is an error.
inline constexpr double kSnrCapDb = 100.0;
double estimate_snr(const Waveform& w, double frame_ms = 25.0, double hop_ms = 10.0);

// Geometric over arithmetic mean of a magnitude spectrum; 0 for silence.
double spectral_flatness(const Eigen::Ref<const Eigen::VectorXd>& magnitude);

struct FlatnessConfig {
  int n_fft = 512;
  int hop = 256;
};

struct MusicLikelihood {
  double head = 0.0;
  double tail = 0.0;
};

// Mean frame flatness over the first and last `window_s` seconds.
MusicLikelihood music_likelihood(const Waveform& w, double window_s, const FlatnessConfig& cfg = {});

double clipping_ratio(const Waveform& w, double clip_level = 0.999);

struct HeuristicConfig {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  // Shrunk to half the segment duration for short segments.
  double music_window_s = 1.0;
  double clip_level = 0.999;
  FlatnessConfig flatness;
};

struct HeuristicReport {
  double snr_db = 0.0;
  double spectral_flatness_head = 0.0;
  double spectral_flatness_tail = 0.0;
  double clipping_ratio = 0.0;
};

HeuristicReport compute_heuristics(const Waveform& w, const HeuristicConfig& cfg = {});

struct ClassThresholds {
  double music_flatness = 0.45;
  double min_snr_db = 15.0;
  double max_clipping = 0.01;
  double max_asr_disagreement = 0.20;
};

struct ExternalFlags {
  bool overlap = false;
  bool wrong_speaker = false;
};

struct Predicates {
  bool background_music = false;
  bool overlapped_speech = false;
  bool wrong_speaker = false;
  bool wrong_transcription = false;
  bool bad_recording = false;

  bool any() const {
    return background_music || overlapped_speech || wrong_speaker || wrong_transcription ||
           bad_recording;
  }
};

Predicates evaluate_predicates(const HeuristicReport& heuristics, const ExternalFlags& flags,
                               std::optional<double> asr_disagreement,
                               const ClassThresholds& thresholds = {});

// First firing predicate in the order music, overlap, wrong speaker, wrong
// transcription, bad recording; GoodRecording when none fire.
SegmentClass classify_segment(const HeuristicReport& heuristics, const ExternalFlags& flags,
                              std::optional<double> asr_disagreement,
                              const ClassThresholds& thresholds = {});

struct SelectionPolicy {
  // Score filter: keep score > threshold. Disabled when unset.
  std::optional<std::string> scorer_name = "dnsmos";
  double threshold = 4.0;
  // Class filter. Disabled when unset.
  std::optional<SegmentClass> required_class;
  std::optional<double> max_minutes;

  static SelectionPolicy automatic(std::string scorer, double threshold = 4.0);
  static SelectionPolicy manual(SegmentClass required = SegmentClass::kGoodRecording);

  void validate() const;
};

// Survivors keep manifest order. With max_minutes, survivors are admitted
// by descending score (manifest order on ties) until the next one would
// exceed the cap.
CorpusManifest select(const CorpusManifest& manifest, const SelectionPolicy& policy);

}  // namespace corpusforge::quality
