// src/quality.cpp

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

#include "corpusforge/quality.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "corpusforge/csv.hpp"
#include "corpusforge/dsp/stft.hpp"
#include "corpusforge/error.hpp"

namespace corpusforge::quality {

std::vector<ScoreRow> parse_score_csv(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  csv::Table table;
  try {
    table = csv::read(in);
  } catch (const InputError& e) {
    throw InputError(name + ": " + e.what());
  }
  if (table.header.empty() && table.rows.empty()) return {};
  if (table.header != csv::Row{"segment_id", "scorer", "score"})
    throw InputError(name + ": expected header segment_id,scorer,score");
  std::vector<ScoreRow> rows;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    const std::string where = name + " line " + std::to_string(table.line_numbers[i]) + ": ";
    double score = 0.0;
    try {
      score = csv::parse_double(r[2]);
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
    if (!(score >= 1.0 && score <= 5.0))
      throw InputError(where + "score " + r[2] + " outside [1,5]");
    if (!seen.emplace(r[0], r[1]).second)
      throw InputError(where + "repeated pair (" + r[0] + ", " + r[1] + ")");
    rows.push_back({r[0], r[1], score});
  }
  return rows;
}

std::vector<ScoreRow> read_score_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open score file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_score_csv(buf.str(), path);
}

IngestResult ingest_scores(const CorpusManifest& manifest, const std::vector<ScoreRow>& rows) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < manifest.segments.size(); ++i) index[manifest.segments[i].id] = i;

  std::vector<std::string> unknown;
  for (const auto& row : rows) {
    if (!(row.score >= 1.0 && row.score <= 5.0))
      throw InputError("score " + csv::format_double(row.score) + " for " + row.segment_id +
                       " outside [1,5]");
    if (!index.count(row.segment_id)) unknown.push_back(row.segment_id);
  }
  if (!unknown.empty())
    throw InputError("score rows reference unknown segment ids: " + join_strings(unknown, ", "));

  IngestResult result{manifest, {}};
  for (const auto& row : rows) {
    auto& scores = result.manifest.segments[index[row.segment_id]].scores;
    if (scores.count(row.scorer))
      result.warnings.push_back("overwriting " + row.scorer + " score for " + row.segment_id);
    scores[row.scorer] = row.score;
  }
  return result;
}

namespace {

// Linear interpolation between closest ranks.
double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double mean_flatness(const Eigen::Ref<const Eigen::VectorXd>& samples, const FlatnessConfig& cfg) {
  const Eigen::VectorXd window = dsp::hann_window<double>(cfg.n_fft, cfg.n_fft);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> frame(static_cast<std::size_t>(cfg.n_fft));
  std::vector<std::complex<double>> spectrum;
  const Eigen::Index n = samples.size();
  const Eigen::Index n_frames = n >= cfg.n_fft ? 1 + (n - cfg.n_fft) / cfg.hop : 1;
  double total = 0.0;
  for (Eigen::Index t = 0; t < n_frames; ++t) {
    for (int k = 0; k < cfg.n_fft; ++k) {
      const Eigen::Index i = t * cfg.hop + k;
      frame[static_cast<std::size_t>(k)] = i < n ? window[k] * samples[i] : 0.0;
    }
    fft.fwd(spectrum, frame);
    Eigen::VectorXd mag(static_cast<Eigen::Index>(spectrum.size()));
    for (std::size_t b = 0; b < spectrum.size(); ++b)
      mag[static_cast<Eigen::Index>(b)] = std::abs(spectrum[b]);
    total += spectral_flatness(mag);
  }
  return total / static_cast<double>(n_frames);
}

}  // namespace

double estimate_snr(const Waveform& w, double frame_ms, double hop_ms) {
  if (!(frame_ms > 0 && hop_ms > 0)) throw InputError("estimate_snr: frame and hop must be positive");
  const auto frame = static_cast<Eigen::Index>(std::llround(frame_ms * 1e-3 * w.sample_rate_hz));
  const auto hop = static_cast<Eigen::Index>(std::llround(hop_ms * 1e-3 * w.sample_rate_hz));
  if (frame < 1 || hop < 1) throw InputError("estimate_snr: frame or hop shorter than one sample");
  const Eigen::Index n = w.samples.size();
  const Eigen::Index n_frames = n >= frame ? 1 + (n - frame) / hop : 0;
  if (n_frames < 10)
    throw InputError("estimate_snr: signal yields " + std::to_string(n_frames) +
                     " frames, need at least 10");
  std::vector<double> energy(static_cast<std::size_t>(n_frames));
  for (Eigen::Index t = 0; t < n_frames; ++t)
    energy[static_cast<std::size_t>(t)] = w.samples.segment(t * hop, frame).squaredNorm() /
                                          static_cast<double>(frame);
  const double noise = percentile(energy, 0.10);
  const double speech = percentile(energy, 0.90);
  if (!(speech > 0.0)) throw InputError("estimate_snr: signal is silent");
  if (!(noise > 0.0)) return kSnrCapDb;
  return std::min(kSnrCapDb, 10.0 * std::log10(speech / noise));
}

double spectral_flatness(const Eigen::Ref<const Eigen::VectorXd>& magnitude) {
  if (magnitude.size() == 0) return 0.0;
  const double arithmetic = magnitude.mean();
  if (!(arithmetic > 0.0)) return 0.0;
  double log_sum = 0.0;
  for (Eigen::Index i = 0; i < magnitude.size(); ++i) {
    if (!(magnitude[i] > 0.0)) return 0.0;
    log_sum += std::log(magnitude[i]);
  }
  const double geometric = std::exp(log_sum / static_cast<double>(magnitude.size()));
  return std::clamp(geometric / arithmetic, 0.0, 1.0);
}

MusicLikelihood music_likelihood(const Waveform& w, double window_s, const FlatnessConfig& cfg) {
  if (!(window_s > 0)) throw InputError("music_likelihood: window must be positive");
  if (cfg.n_fft < 2 || cfg.hop < 1) throw InputError("music_likelihood: invalid frame config");
  const auto window = static_cast<Eigen::Index>(std::llround(window_s * w.sample_rate_hz));
  if (window < 1 || w.samples.size() < 2 * window)
    throw InputError("music_likelihood: signal shorter than two windows");
  return {mean_flatness(w.samples.head(window), cfg),
          mean_flatness(w.samples.tail(window), cfg)};
}

double clipping_ratio(const Waveform& w, double clip_level) {
  if (w.samples.size() == 0) return 0.0;
  const auto clipped = (w.samples.array().abs() >= clip_level).count();
  return static_cast<double>(clipped) / static_cast<double>(w.samples.size());
}

HeuristicReport compute_heuristics(const Waveform& w, const HeuristicConfig& cfg) {
  if (w.samples.size() == 0) throw InputError("compute_heuristics: empty waveform");
  if (!w.samples.allFinite()) throw InputError("compute_heuristics: non-finite samples");
  HeuristicReport r;
  r.snr_db = estimate_snr(w, cfg.frame_ms, cfg.hop_ms);
  const double window = std::min(cfg.music_window_s, 0.5 * w.duration_s());
  const MusicLikelihood music = music_likelihood(w, window, cfg.flatness);
  r.spectral_flatness_head = music.head;
  r.spectral_flatness_tail = music.tail;
  r.clipping_ratio = clipping_ratio(w, cfg.clip_level);
  return r;
}

Predicates evaluate_predicates(const HeuristicReport& h, const ExternalFlags& flags,
                               std::optional<double> asr_disagreement,
                               const ClassThresholds& t) {
  Predicates p;
  p.background_music =
      h.spectral_flatness_head > t.music_flatness || h.spectral_flatness_tail > t.music_flatness;
  p.overlapped_speech = flags.overlap;
  p.wrong_speaker = flags.wrong_speaker;
  p.wrong_transcription = asr_disagreement && *asr_disagreement > t.max_asr_disagreement;
  p.bad_recording = h.snr_db < t.min_snr_db || h.clipping_ratio > t.max_clipping;
  return p;
}

SegmentClass classify_segment(const HeuristicReport& h, const ExternalFlags& flags,
                              std::optional<double> asr_disagreement, const ClassThresholds& t) {
  const Predicates p = evaluate_predicates(h, flags, asr_disagreement, t);
  if (p.background_music) return SegmentClass::kBackgroundMusic;
  if (p.overlapped_speech) return SegmentClass::kOverlappedSpeech;
  if (p.wrong_speaker) return SegmentClass::kWrongSpeaker;
  if (p.wrong_transcription) return SegmentClass::kWrongTranscription;
  if (p.bad_recording) return SegmentClass::kBadRecording;
  return SegmentClass::kGoodRecording;
}

SelectionPolicy SelectionPolicy::automatic(std::string scorer, double threshold) {
  SelectionPolicy p;
  p.scorer_name = std::move(scorer);
  p.threshold = threshold;
  return p;
}

SelectionPolicy SelectionPolicy::manual(SegmentClass required) {
  SelectionPolicy p;
  p.scorer_name.reset();
  p.required_class = required;
  return p;
}

void SelectionPolicy::validate() const {
  if (!(threshold >= 1.0 && threshold <= 5.0))
    throw InputError("selection threshold must be in [1,5]");
  if (max_minutes && !(*max_minutes >= 0.0)) throw InputError("max_minutes must be >= 0");
  if (scorer_name && scorer_name->empty()) throw InputError("scorer name is empty");
}

CorpusManifest select(const CorpusManifest& manifest, const SelectionPolicy& policy) {
  policy.validate();
  std::vector<std::string> missing;
  for (const auto& s : manifest.segments) {
    if (policy.scorer_name && !s.scores.count(*policy.scorer_name)) missing.push_back(s.id);
    if (policy.required_class && !s.class_label) missing.push_back(s.id);
  }
  if (!missing.empty()) {
    const std::string what = policy.scorer_name ? "score '" + *policy.scorer_name + "'" : "class label";
    throw InputError("segments missing " + what + ": " + join_strings(missing, ", "));
  }

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < manifest.segments.size(); ++i) {
    const auto& s = manifest.segments[i];
    if (policy.scorer_name && !(s.scores.at(*policy.scorer_name) > policy.threshold)) continue;
    if (policy.required_class && *s.class_label != *policy.required_class) continue;
    kept.push_back(i);
  }

  if (policy.max_minutes) {
    std::vector<std::size_t> order = kept;
    if (policy.scorer_name) {
      const std::string& scorer = *policy.scorer_name;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return manifest.segments[a].scores.at(scorer) > manifest.segments[b].scores.at(scorer);
      });
    }
    const double cap_s = *policy.max_minutes * 60.0;
    double used = 0.0;
    std::vector<std::size_t> admitted;
    for (std::size_t i : order) {
      const double d = manifest.segments[i].duration_s();
      if (used + d > cap_s) break;
      used += d;
      admitted.push_back(i);
    }
    std::sort(admitted.begin(), admitted.end());
    kept = std::move(admitted);
  }

  CorpusManifest out;
  out.source_name = manifest.source_name;
  out.created_at = manifest.created_at;
  out.tool_version = manifest.tool_version;
  for (std::size_t i : kept) out.segments.push_back(manifest.segments[i]);
  return out;
}

}  // namespace corpusforge::quality
