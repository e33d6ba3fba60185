// include/corpusforge/pipeline/commands.hpp

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

#include <map>
#include <string>
#include <vector>

#include "corpusforge/corpus.hpp"
#include "corpusforge/dsp/mel.hpp"
#include "corpusforge/eval/align.hpp"
#include "corpusforge/eval/mcd.hpp"
#include "corpusforge/eval/report.hpp"
#include "corpusforge/pipeline/config.hpp"
#include "corpusforge/pipeline/split.hpp"
#include "corpusforge/wav.hpp"

namespace corpusforge::pipeline {

std::string tool_version();

// Provenance lines embedded in every report.
eval::Provenance provenance_for(const PipelineConfig& cfg);

// Log-mel analysis with the configured STFT and filterbank.
dsp::MelFilterbank<double> make_filterbank(const DspSettings& s);
dsp::MelSpectrogram<double> analyze_mel(const Waveform& w, const DspSettings& s,
                                        const dsp::MelFilterbank<double>& fb);

struct IngestOutcome {
  CorpusManifest manifest;
  std::vector<std::string> warnings;
};

// Scans corpus_root for <id>.wav with a matching <id>.txt transcript and an
// optional <id>.meta metadata file; one whole-file segment per pair, in
// file-name order.
IngestOutcome cmd_ingest(const PipelineConfig& cfg);

struct PipelineOutcome {
  CorpusManifest classified;
  CorpusManifest selected;
  std::optional<SplitResult> splits;
  ClassSummary summary;
  std::vector<std::string> warnings;
};

// ingest or read manifest -> scores -> flags -> repair -> diacritize ->
// heuristics -> classify -> select -> split. Writes classified.jsonl,
// selected.jsonl, train/dev/test.jsonl, class_summary.{txt,csv} and
// provenance.json under paths.output_dir.
PipelineOutcome cmd_pipeline(const PipelineConfig& cfg, unsigned jobs = 1);

// Writes train.jsonl, dev.jsonl and test.jsonl into out_dir.
SplitResult cmd_split(const CorpusManifest& manifest, const SplitSpec& spec, std::uint64_t seed,
                      const std::string& out_dir);

struct SynthOutcome {
  std::vector<std::string> written;
  std::vector<std::string> notices;
};

// One WAV per *.cfmx log-mel file (frames x n_mels) in mel_dir.
SynthOutcome cmd_synth_gl(const std::string& mel_dir, const std::string& out_dir,
                          const PipelineConfig& cfg, unsigned jobs = 1);

// Writes <stem>.cfmx log-mel files for each WAV in wav_dir.
std::vector<std::string> cmd_mel(const std::string& wav_dir, const std::string& out_dir,
                                 const PipelineConfig& cfg);

struct UtteranceScore {
  std::string id;
  eval::AlignmentResult words;
  eval::AlignmentResult chars;
  eval::McdResult mcd;
};

struct EvalOutcome {
  std::vector<UtteranceScore> utterances;
  eval::EvalRow corpus;
  std::size_t char_subs = 0, char_ins = 0, char_dels = 0, char_ref = 0;
  std::size_t word_subs = 0, word_ins = 0, word_dels = 0, word_ref = 0;
};

struct EvalInputs {
  std::string ref_dir;
  std::string syn_dir;
  std::string transcripts;  // "<id> <text>" per line
  std::string hypotheses;   // JSONL segment_id, hypothesis_text
  std::string out_dir;
  std::string system_id = "sys";
  std::string model;
  std::optional<bool> vowelized;
};

// Per-utterance and corpus WER/CER/MCD. Writes eval_utterances.csv,
// eval_report.{csv,txt} and eval_cer_breakdown.txt into out_dir.
EvalOutcome cmd_eval(const EvalInputs& in, const PipelineConfig& cfg, unsigned jobs = 1);

std::map<std::string, std::string> read_kaldi_text(const std::string& path);

}  // namespace corpusforge::pipeline
