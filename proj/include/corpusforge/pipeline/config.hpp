// include/corpusforge/pipeline/config.hpp

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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpusforge/dsp/mel.hpp"
#include "corpusforge/dsp/stft.hpp"
#include "corpusforge/eval/tokenize.hpp"
#include "corpusforge/metadata.hpp"
#include "corpusforge/quality.hpp"
#include "corpusforge/textproc.hpp"

namespace corpusforge::pipeline {

enum class SplitStrategy { kTail, kSeededRandom };

struct SplitSpec {
  std::size_t n_dev = 25;
  std::size_t n_test = 25;
  SplitStrategy strategy = SplitStrategy::kTail;
};

struct Paths {
  std::string corpus_root;
  std::string manifest;
  std::vector<std::string> score_files;
  std::string asr_hypotheses;
  std::string flags;              // CSV segment_id,overlap,wrong_speaker
  std::string speaker_overrides;  // CSV raw,canonical
  std::string metadata_keys;
  std::string output_dir = "corpusforge-out";
};

struct DiacritizerSettings {
  std::string command;
  std::string lookup_table;
  textproc::CoveragePolicy coverage_policy = textproc::CoveragePolicy::kWarn;
};

struct DspSettings {
  dsp::StftConfig stft;
  int n_mels = 80;
  double f_min = 80.0;
  double f_max = 7600.0;
  dsp::MelScale mel_scale = dsp::MelScale::kMagnitude;
  int gl_iterations = 100;
  bool gl_random_init = false;
  int n_cepstra = 13;
  bool use_dtw = true;
};

struct EvalSettings {
  bool strip_diacritics = false;
  std::optional<std::string> punctuation;
  std::optional<int> reduction_factor;  // recorded in reports only
};

enum class SelectionMode { kAutomatic, kManual, kBoth };

struct PipelineConfig {
  Paths paths;
  DiacritizerSettings diacritizer;
  quality::HeuristicConfig heuristics;
  quality::ClassThresholds classes;
  SelectionMode selection_mode = SelectionMode::kAutomatic;
  quality::SelectionPolicy selection;
  textproc::RepairConfig repair;
  metadata::LinkOptions speakers;
  DspSettings dsp;
  EvalSettings eval;
  SplitSpec split;
  std::uint64_t seed = 0;
  std::string source_name;
  std::string created_at;

  // The policy actually applied for the configured selection mode.
  quality::SelectionPolicy effective_policy() const;
  eval::TokenizeOptions tokenize_options() const;
};

// Strict: unknown keys and out-of-range values raise InputError naming the
// offending key path.
PipelineConfig parse_config(const nlohmann::json& j);
PipelineConfig load_config(const std::string& path);

// Fully expanded configuration including defaults.
nlohmann::json config_to_json(const PipelineConfig& cfg);

// 16 hex digits of FNV-1a over the canonical expanded configuration.
std::string config_hash(const PipelineConfig& cfg);

}  // namespace corpusforge::pipeline
