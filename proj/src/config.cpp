// src/config.cpp

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

#include "corpusforge/pipeline/config.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <set>

#include "corpusforge/error.hpp"
#include "corpusforge/utf8.hpp"

namespace corpusforge::pipeline {

using nlohmann::json;

namespace {

// Typed, range-checked access to one JSON object; rejects unknown keys.
class Section {
 public:
  Section(const json& j, std::string path, std::set<std::string> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw InputError("config: '" + path_ + "' must be an object");
    for (const auto& [key, _] : j_.items())
      if (!allowed.count(key)) throw InputError("config: unknown key '" + where(key) + "'");
  }

  bool has(const char* key) const { return j_.contains(key) && !j_[key].is_null(); }
  const json& raw(const char* key) const { return j_[key]; }
  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void string(const char* key, std::string& out) const {
    if (!has(key)) return;
    if (!j_[key].is_string()) throw InputError("config: '" + where(key) + "' must be a string");
    out = j_[key].get<std::string>();
  }

  void boolean(const char* key, bool& out) const {
    if (!has(key)) return;
    if (!j_[key].is_boolean()) throw InputError("config: '" + where(key) + "' must be a boolean");
    out = j_[key].get<bool>();
  }

  void number(const char* key, double& out, double lo, double hi) const {
    if (!has(key)) return;
    if (!j_[key].is_number()) throw InputError("config: '" + where(key) + "' must be a number");
    const double v = j_[key].get<double>();
    if (!(v >= lo && v <= hi)) throw InputError("config: '" + where(key) + "' out of range");
    out = v;
  }

  template <typename Int>
  void integer(const char* key, Int& out, long long lo, long long hi) const {
    if (!has(key)) return;
    if (!j_[key].is_number_integer())
      throw InputError("config: '" + where(key) + "' must be an integer");
    const auto v = j_[key].get<long long>();
    if (v < lo || v > hi) throw InputError("config: '" + where(key) + "' out of range");
    out = static_cast<Int>(v);
  }

 private:
  const json& j_;
  std::string path_;
};

const char* to_string(SelectionMode m) {
  switch (m) {
    case SelectionMode::kAutomatic: return "automatic";
    case SelectionMode::kManual: return "manual";
    case SelectionMode::kBoth: return "both";
  }
  return "automatic";
}

}  // namespace

quality::SelectionPolicy PipelineConfig::effective_policy() const {
  quality::SelectionPolicy p = selection;
  if (selection_mode == SelectionMode::kAutomatic) p.required_class.reset();
  if (selection_mode == SelectionMode::kManual) p.scorer_name.reset();
  if (selection_mode != SelectionMode::kAutomatic && !p.required_class)
    p.required_class = SegmentClass::kGoodRecording;
  return p;
}

eval::TokenizeOptions PipelineConfig::tokenize_options() const {
  eval::TokenizeOptions opts;
  opts.strip_diacritics = eval.strip_diacritics;
  if (eval.punctuation) opts.punctuation = text::to_u32(*eval.punctuation);
  return opts;
}

PipelineConfig parse_config(const json& j) {
  PipelineConfig cfg;
  const Section top(j, "",
                    {"paths", "diacritizer", "heuristics", "classes", "selection", "repair",
                     "speakers", "dsp", "eval", "split", "seed", "source_name", "created_at"});
  top.integer("seed", cfg.seed, 0, std::numeric_limits<long long>::max());
  top.string("source_name", cfg.source_name);
  top.string("created_at", cfg.created_at);

  if (top.has("paths")) {
    const Section s(top.raw("paths"), "paths",
                    {"corpus_root", "manifest", "score_files", "asr_hypotheses", "flags",
                     "speaker_overrides", "metadata_keys", "output_dir"});
    s.string("corpus_root", cfg.paths.corpus_root);
    s.string("manifest", cfg.paths.manifest);
    s.string("asr_hypotheses", cfg.paths.asr_hypotheses);
    s.string("flags", cfg.paths.flags);
    s.string("speaker_overrides", cfg.paths.speaker_overrides);
    s.string("metadata_keys", cfg.paths.metadata_keys);
    s.string("output_dir", cfg.paths.output_dir);
    if (s.has("score_files")) {
      const json& files = s.raw("score_files");
      if (!files.is_array()) throw InputError("config: 'paths.score_files' must be an array");
      for (const auto& f : files) {
        if (!f.is_string()) throw InputError("config: 'paths.score_files' entries must be strings");
        cfg.paths.score_files.push_back(f.get<std::string>());
      }
    }
  }

  if (top.has("diacritizer")) {
    const Section s(top.raw("diacritizer"), "diacritizer",
                    {"command", "lookup_table", "coverage_policy"});
    s.string("command", cfg.diacritizer.command);
    s.string("lookup_table", cfg.diacritizer.lookup_table);
    std::string policy = "warn";
    s.string("coverage_policy", policy);
    if (policy == "fail") cfg.diacritizer.coverage_policy = textproc::CoveragePolicy::kFail;
    else if (policy != "warn")
      throw InputError("config: 'diacritizer.coverage_policy' must be fail or warn");
    if (!cfg.diacritizer.command.empty() && !cfg.diacritizer.lookup_table.empty())
      throw InputError("config: set only one of diacritizer.command and diacritizer.lookup_table");
  }

  if (top.has("heuristics")) {
    const Section s(top.raw("heuristics"), "heuristics",
                    {"frame_ms", "hop_ms", "music_window_s", "clip_level", "flatness_n_fft",
                     "flatness_hop"});
    s.number("frame_ms", cfg.heuristics.frame_ms, 1e-3, 1e4);
    s.number("hop_ms", cfg.heuristics.hop_ms, 1e-3, 1e4);
    s.number("music_window_s", cfg.heuristics.music_window_s, 1e-3, 3600);
    s.number("clip_level", cfg.heuristics.clip_level, 0.0, 1.0);
    s.integer("flatness_n_fft", cfg.heuristics.flatness.n_fft, 2, 1 << 16);
    s.integer("flatness_hop", cfg.heuristics.flatness.hop, 1, 1 << 16);
  }

  if (top.has("classes")) {
    const Section s(top.raw("classes"), "classes", {"music_flatness", "min_snr_db", "max_clipping"});
    s.number("music_flatness", cfg.classes.music_flatness, 0.0, 1.0);
    s.number("min_snr_db", cfg.classes.min_snr_db, -quality::kSnrCapDb, quality::kSnrCapDb);
    s.number("max_clipping", cfg.classes.max_clipping, 0.0, 1.0);
  }

  if (top.has("selection")) {
    const Section s(top.raw("selection"), "selection",
                    {"mode", "scorer", "threshold", "required_class", "max_minutes"});
    std::string mode = "automatic";
    s.string("mode", mode);
    if (mode == "automatic") cfg.selection_mode = SelectionMode::kAutomatic;
    else if (mode == "manual") cfg.selection_mode = SelectionMode::kManual;
    else if (mode == "both") cfg.selection_mode = SelectionMode::kBoth;
    else throw InputError("config: 'selection.mode' must be automatic, manual or both");
    std::string scorer = *cfg.selection.scorer_name;
    s.string("scorer", scorer);
    if (scorer.empty()) throw InputError("config: 'selection.scorer' is empty");
    cfg.selection.scorer_name = scorer;
    s.number("threshold", cfg.selection.threshold, 1.0, 5.0);
    if (s.has("required_class")) {
      std::string name;
      s.string("required_class", name);
      auto c = parse_segment_class(name);
      if (!c) throw InputError("config: unknown class '" + name + "' in selection.required_class");
      cfg.selection.required_class = *c;
    }
    if (s.has("max_minutes")) {
      double minutes = 0.0;
      s.number("max_minutes", minutes, 0.0, 1e9);
      cfg.selection.max_minutes = minutes;
    }
  }

  if (top.has("repair")) {
    const Section s(top.raw("repair"), "repair",
                    {"token_similarity_max", "disagreement_flag_threshold"});
    s.number("token_similarity_max", cfg.repair.token_similarity_max, 0.0, 1.0);
    s.number("disagreement_flag_threshold", cfg.repair.disagreement_flag_threshold, 0.0, 1.0);
  }
  cfg.classes.max_asr_disagreement = cfg.repair.disagreement_flag_threshold;

  if (top.has("speakers")) {
    const Section s(top.raw("speakers"), "speakers", {"arabic_folding", "fuzzy", "fuzzy_threshold"});
    s.boolean("arabic_folding", cfg.speakers.normalize.arabic_folding);
    s.boolean("fuzzy", cfg.speakers.fuzzy);
    s.number("fuzzy_threshold", cfg.speakers.fuzzy_threshold, 0.0, 1.0);
  }

  if (top.has("dsp")) {
    const Section s(top.raw("dsp"), "dsp",
                    {"sample_rate_hz", "n_fft", "win", "hop", "n_mels", "f_min", "f_max",
                     "mel_scale", "gl_iterations", "gl_init", "n_cepstra", "use_dtw"});
    auto& d = cfg.dsp;
    s.integer("sample_rate_hz", d.stft.sample_rate_hz, 1, 1 << 24);
    s.integer("n_fft", d.stft.n_fft, 2, 1 << 20);
    s.integer("win", d.stft.win, 1, 1 << 20);
    s.integer("hop", d.stft.hop, 1, 1 << 20);
    s.integer("n_mels", d.n_mels, 2, 1 << 12);
    s.number("f_min", d.f_min, 0.0, 1e6);
    s.number("f_max", d.f_max, 0.0, 1e6);
    std::string scale = "magnitude";
    s.string("mel_scale", scale);
    if (scale == "power") d.mel_scale = dsp::MelScale::kPower;
    else if (scale != "magnitude") throw InputError("config: 'dsp.mel_scale' must be magnitude or power");
    s.integer("gl_iterations", d.gl_iterations, 0, 100000);
    std::string init = "zero";
    s.string("gl_init", init);
    if (init == "random") d.gl_random_init = true;
    else if (init != "zero") throw InputError("config: 'dsp.gl_init' must be zero or random");
    s.integer("n_cepstra", d.n_cepstra, 2, 1 << 12);
    s.boolean("use_dtw", d.use_dtw);
    try {
      d.stft.validate();
    } catch (const InputError& e) {
      throw InputError(std::string("config: dsp: ") + e.what());
    }
    if (!(d.f_min < d.f_max && d.f_max <= d.stft.sample_rate_hz / 2.0))
      throw InputError("config: dsp requires f_min < f_max <= sample_rate_hz / 2");
    if (d.n_cepstra > d.n_mels) throw InputError("config: 'dsp.n_cepstra' exceeds n_mels");
  }

  if (top.has("eval")) {
    const Section s(top.raw("eval"), "eval", {"strip_diacritics", "punctuation", "reduction_factor"});
    s.boolean("strip_diacritics", cfg.eval.strip_diacritics);
    if (s.has("punctuation")) {
      std::string p;
      s.string("punctuation", p);
      cfg.eval.punctuation = p;
    }
    if (s.has("reduction_factor")) {
      int r = 1;
      s.integer("reduction_factor", r, 1, 1000);
      cfg.eval.reduction_factor = r;
    }
  }

  if (top.has("split")) {
    const Section s(top.raw("split"), "split", {"n_dev", "n_test", "strategy"});
    s.integer("n_dev", cfg.split.n_dev, 0, std::numeric_limits<int>::max());
    s.integer("n_test", cfg.split.n_test, 0, std::numeric_limits<int>::max());
    std::string strategy = "tail";
    s.string("strategy", strategy);
    if (strategy == "seeded-random") cfg.split.strategy = SplitStrategy::kSeededRandom;
    else if (strategy != "tail") throw InputError("config: 'split.strategy' must be tail or seeded-random");
  }
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": malformed JSON (" + e.what() + ")");
  }
  try {
    return parse_config(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

json config_to_json(const PipelineConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["source_name"] = c.source_name;
  j["created_at"] = c.created_at;
  j["paths"] = {{"corpus_root", c.paths.corpus_root},
                {"manifest", c.paths.manifest},
                {"score_files", c.paths.score_files},
                {"asr_hypotheses", c.paths.asr_hypotheses},
                {"flags", c.paths.flags},
                {"speaker_overrides", c.paths.speaker_overrides},
                {"metadata_keys", c.paths.metadata_keys},
                {"output_dir", c.paths.output_dir}};
  j["diacritizer"] = {
      {"command", c.diacritizer.command},
      {"lookup_table", c.diacritizer.lookup_table},
      {"coverage_policy",
       c.diacritizer.coverage_policy == textproc::CoveragePolicy::kFail ? "fail" : "warn"}};
  j["heuristics"] = {{"frame_ms", c.heuristics.frame_ms},
                     {"hop_ms", c.heuristics.hop_ms},
                     {"music_window_s", c.heuristics.music_window_s},
                     {"clip_level", c.heuristics.clip_level},
                     {"flatness_n_fft", c.heuristics.flatness.n_fft},
                     {"flatness_hop", c.heuristics.flatness.hop}};
  j["classes"] = {{"music_flatness", c.classes.music_flatness},
                  {"min_snr_db", c.classes.min_snr_db},
                  {"max_clipping", c.classes.max_clipping}};
  j["selection"] = {{"mode", to_string(c.selection_mode)},
                    {"scorer", c.selection.scorer_name.value_or("")},
                    {"threshold", c.selection.threshold},
                    {"required_class", c.selection.required_class
                                           ? json(std::string(corpusforge::to_string(*c.selection.required_class)))
                                           : json(nullptr)},
                    {"max_minutes", c.selection.max_minutes ? json(*c.selection.max_minutes) : json(nullptr)}};
  j["repair"] = {{"token_similarity_max", c.repair.token_similarity_max},
                 {"disagreement_flag_threshold", c.repair.disagreement_flag_threshold}};
  j["speakers"] = {{"arabic_folding", c.speakers.normalize.arabic_folding},
                   {"fuzzy", c.speakers.fuzzy},
                   {"fuzzy_threshold", c.speakers.fuzzy_threshold}};
  j["dsp"] = {{"sample_rate_hz", c.dsp.stft.sample_rate_hz},
              {"n_fft", c.dsp.stft.n_fft},
              {"win", c.dsp.stft.win},
              {"hop", c.dsp.stft.hop},
              {"n_mels", c.dsp.n_mels},
              {"f_min", c.dsp.f_min},
              {"f_max", c.dsp.f_max},
              {"mel_scale", c.dsp.mel_scale == dsp::MelScale::kPower ? "power" : "magnitude"},
              {"gl_iterations", c.dsp.gl_iterations},
              {"gl_init", c.dsp.gl_random_init ? "random" : "zero"},
              {"n_cepstra", c.dsp.n_cepstra},
              {"use_dtw", c.dsp.use_dtw}};
  j["eval"] = {{"strip_diacritics", c.eval.strip_diacritics},
               {"punctuation", c.eval.punctuation ? json(*c.eval.punctuation) : json(nullptr)},
               {"reduction_factor",
                c.eval.reduction_factor ? json(*c.eval.reduction_factor) : json(nullptr)}};
  j["split"] = {{"n_dev", c.split.n_dev},
                {"n_test", c.split.n_test},
                {"strategy", c.split.strategy == SplitStrategy::kTail ? "tail" : "seeded-random"}};
  return j;
}

std::string config_hash(const PipelineConfig& cfg) {
  const std::string canonical = config_to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace corpusforge::pipeline
