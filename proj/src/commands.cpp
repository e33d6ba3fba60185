// src/commands.cpp

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

#include "corpusforge/pipeline/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "corpusforge/csv.hpp"
#include "corpusforge/dsp.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/eval/tokenize.hpp"
#include "corpusforge/metadata.hpp"
#include "corpusforge/pipeline/parallel.hpp"
#include "corpusforge/quality.hpp"
#include "corpusforge/textproc.hpp"
#include "corpusforge/utf8.hpp"

namespace corpusforge::pipeline {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

// Regular files in `dir` with `extension`, sorted by name.
std::vector<fs::path> list_files(const fs::path& dir, const std::string& extension) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == extension) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

bool parse_flag(const std::string& v, const std::string& where) {
  const std::string s = text::to_lower_ascii(text::trim(v));
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no" || s.empty()) return false;
  throw InputError(where + ": flag value '" + v + "' is not boolean");
}

std::map<std::string, quality::ExternalFlags> read_flags(const std::string& path) {
  const csv::Table table = csv::read_file(path);
  if (table.header != csv::Row{"segment_id", "overlap", "wrong_speaker"})
    throw InputError(path + ": expected header segment_id,overlap,wrong_speaker");
  std::map<std::string, quality::ExternalFlags> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const std::string where = path + " line " + std::to_string(table.line_numbers[i]);
    const auto& r = table.rows[i];
    out[r[0]] = {parse_flag(r[1], where), parse_flag(r[2], where)};
  }
  return out;
}

std::string with_provenance(const eval::Provenance& provenance, const std::string& body) {
  std::string out;
  for (const auto& [k, v] : provenance) out += "# " + k + ": " + v + "\n";
  return out + body;
}

}  // namespace

std::string tool_version() { return std::string("corpusforge ") + CORPUSFORGE_VERSION; }

eval::Provenance provenance_for(const PipelineConfig& cfg) {
  const auto& d = cfg.dsp;
  eval::Provenance p = {
      {"tool_version", tool_version()},
      {"config_hash", config_hash(cfg)},
      {"stft", "sr=" + std::to_string(d.stft.sample_rate_hz) + " n_fft=" +
                   std::to_string(d.stft.n_fft) + " win=" + std::to_string(d.stft.win) +
                   " hop=" + std::to_string(d.stft.hop)},
      {"mel", "n_mels=" + std::to_string(d.n_mels) + " f_min=" + csv::format_double(d.f_min) +
                  " f_max=" + csv::format_double(d.f_max) +
                  (d.mel_scale == dsp::MelScale::kPower ? " scale=power" : " scale=magnitude")},
      {"griffin_lim", "iterations=" + std::to_string(d.gl_iterations) +
                          (d.gl_random_init ? " init=random" : " init=zero")},
      {"mcd", "n_cepstra=" + std::to_string(d.n_cepstra) + (d.use_dtw ? " dtw=on" : " dtw=off")},
  };
  if (cfg.eval.reduction_factor)
    p.emplace_back("reduction_factor", std::to_string(*cfg.eval.reduction_factor));
  return p;
}

dsp::MelFilterbank<double> make_filterbank(const DspSettings& s) {
  return dsp::build_filterbank<double>(s.n_mels, s.f_min, s.f_max, s.stft.n_fft,
                                       s.stft.sample_rate_hz);
}

dsp::MelSpectrogram<double> analyze_mel(const Waveform& w, const DspSettings& s,
                                        const dsp::MelFilterbank<double>& fb) {
  if (w.sample_rate_hz != s.stft.sample_rate_hz)
    throw InputError("waveform sample rate " + std::to_string(w.sample_rate_hz) +
                     " Hz differs from configured " + std::to_string(s.stft.sample_rate_hz) + " Hz");
  return dsp::mel_spectrogram(dsp::stft(w.samples, s.stft), fb, s.mel_scale);
}

IngestOutcome cmd_ingest(const PipelineConfig& cfg) {
  if (cfg.paths.corpus_root.empty()) throw InputError("ingest: paths.corpus_root is not set");
  const fs::path root(cfg.paths.corpus_root);
  if (!fs::is_directory(root)) throw InputError("ingest: corpus root does not exist: " + root.string());
  const metadata::KeyVocabulary vocab = cfg.paths.metadata_keys.empty()
                                            ? metadata::KeyVocabulary::defaults()
                                            : metadata::KeyVocabulary::from_file(cfg.paths.metadata_keys);
  std::map<std::string, std::string> overrides;
  if (!cfg.paths.speaker_overrides.empty())
    overrides = metadata::read_override_map(cfg.paths.speaker_overrides);

  IngestOutcome out;
  out.manifest.source_name = cfg.source_name.empty() ? root.filename().string() : cfg.source_name;
  out.manifest.created_at = cfg.created_at;
  out.manifest.tool_version = tool_version();
  for (const fs::path& wav : list_files(root, ".wav")) {
    const std::string id = wav.stem().string();
    fs::path transcript = wav;
    transcript.replace_extension(".txt");
    if (!fs::exists(transcript)) {
      out.warnings.push_back("skipping " + id + ": no transcript " + transcript.filename().string());
      continue;
    }
    Waveform w;
    try {
      w = load_wav(wav.string());
    } catch (const WavError& e) {
      out.warnings.push_back("skipping " + id + ": " + e.what());
      continue;
    }
    if (w.samples.size() == 0) {
      out.warnings.push_back("skipping " + id + ": empty audio");
      continue;
    }
    AudioSegment s;
    s.id = id;
    s.audio_path = wav.string();
    s.start_s = 0.0;
    s.end_s = w.duration_s();
    s.sample_rate_hz = w.sample_rate_hz;
    s.transcript_raw = join_strings(text::split_whitespace(read_text(transcript)), " ");

    fs::path meta = wav;
    meta.replace_extension(".meta");
    std::vector<std::string> speakers;
    if (fs::exists(meta)) {
      auto parsed = metadata::parse_metadata(read_text(meta), vocab);
      for (const auto& warning : parsed.warnings) out.warnings.push_back(id + ".meta: " + warning);
      speakers = parsed.metadata.speaker_entries;
    }
    if (!speakers.empty()) {
      const std::string& raw = speakers.front();
      auto ov = overrides.find(raw);
      s.speaker_id = ov != overrides.end() ? ov->second
                                           : metadata::normalize_name(raw, cfg.speakers.normalize);
    }
    out.manifest.segments.push_back(std::move(s));
  }
  return out;
}

PipelineOutcome cmd_pipeline(const PipelineConfig& cfg, unsigned jobs) {
  PipelineOutcome out;
  CorpusManifest manifest;
  if (!cfg.paths.manifest.empty()) {
    manifest = read_manifest(cfg.paths.manifest);
  } else {
    IngestOutcome ingested = cmd_ingest(cfg);
    manifest = std::move(ingested.manifest);
    out.warnings = std::move(ingested.warnings);
  }
  if (!cfg.created_at.empty()) manifest.created_at = cfg.created_at;
  if (!cfg.source_name.empty()) manifest.source_name = cfg.source_name;
  manifest.tool_version = tool_version();

  for (const auto& path : cfg.paths.score_files) {
    auto ingested = quality::ingest_scores(manifest, quality::read_score_file(path));
    manifest = std::move(ingested.manifest);
    for (auto& w : ingested.warnings) out.warnings.push_back(path + ": " + w);
  }

  std::map<std::string, quality::ExternalFlags> flags;
  if (!cfg.paths.flags.empty()) flags = read_flags(cfg.paths.flags);
  for (const auto& [id, _] : flags)
    if (!manifest.find(id)) throw InputError(cfg.paths.flags + ": unknown segment id '" + id + "'");

  std::map<std::string, std::string> hypotheses;
  if (!cfg.paths.asr_hypotheses.empty()) hypotheses = textproc::read_hypotheses(cfg.paths.asr_hypotheses);

  std::optional<textproc::Diacritizer> diacritizer;
  if (!cfg.diacritizer.command.empty())
    diacritizer = textproc::Diacritizer::command(cfg.diacritizer.command, cfg.diacritizer.coverage_policy);
  else if (!cfg.diacritizer.lookup_table.empty())
    diacritizer =
        textproc::Diacritizer::lookup_table(cfg.diacritizer.lookup_table, cfg.diacritizer.coverage_policy);

  const std::size_t n = manifest.segments.size();
  std::vector<std::vector<std::string>> seg_warnings(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    AudioSegment& s = manifest.segments[i];
    try {
      std::optional<double> disagreement;
      const auto ref_tokens = text::split_whitespace(s.transcript_raw);
      if (auto hyp = hypotheses.find(s.id); hyp != hypotheses.end() && !ref_tokens.empty()) {
        const auto hyp_tokens = text::split_whitespace(hyp->second);
        if (hyp_tokens.empty()) {
          disagreement = 1.0;
        } else {
          const auto repair = textproc::repair_transcript(ref_tokens, hyp_tokens, cfg.repair);
          disagreement = repair.disagreement;
          s.transcript_repaired = join_strings(repair.repaired, " ");
        }
        s.extra["asr_disagreement"] = *disagreement;
        s.extra["transcript_flagged"] =
            textproc::flag_wrong_transcription(*disagreement, cfg.repair);
      }
      if (diacritizer) {
        const std::string& source = s.transcript_repaired ? *s.transcript_repaired : s.transcript_raw;
        if (!text::split_whitespace(source).empty()) {
          auto result = diacritizer->apply(source);
          s.transcript_vowelized = result.text;
          for (auto& w : result.warnings) seg_warnings[i].push_back(s.id + ": " + w);
        }
      }
      const Waveform w = load_wav_range(s.audio_path, s.start_s, s.end_s);
      const quality::HeuristicReport h = quality::compute_heuristics(w, cfg.heuristics);
      s.extra["heuristics"] = {{"snr_db", h.snr_db},
                               {"spectral_flatness_head", h.spectral_flatness_head},
                               {"spectral_flatness_tail", h.spectral_flatness_tail},
                               {"clipping_ratio", h.clipping_ratio}};
      auto f = flags.find(s.id);
      s.class_label = quality::classify_segment(
          h, f != flags.end() ? f->second : quality::ExternalFlags{}, disagreement, cfg.classes);
    } catch (const Error& e) {
      throw InputError("segment " + s.id + ": " + e.what());
    }
  });
  for (auto& ws : seg_warnings)
    for (auto& w : ws) out.warnings.push_back(std::move(w));

  out.classified = manifest;
  out.summary = summarize_corpus(manifest);
  out.selected = quality::select(manifest, cfg.effective_policy());
  if (out.selected.segments.empty())
    out.warnings.push_back("selection is empty under the configured policy");
  if (cfg.split.n_dev + cfg.split.n_test < out.selected.segments.size())
    out.splits = split_manifest(out.selected, cfg.split, cfg.seed);
  else
    out.warnings.push_back("selection of " + std::to_string(out.selected.segments.size()) +
                           " segments is too small to split; no train/dev/test written");

  const fs::path dir(cfg.paths.output_dir);
  ensure_dir(dir);
  const eval::Provenance prov = provenance_for(cfg);
  write_manifest(out.classified, (dir / "classified.jsonl").string());
  write_manifest(out.selected, (dir / "selected.jsonl").string());
  if (out.splits) {
    write_manifest(out.splits->train, (dir / "train.jsonl").string());
    write_manifest(out.splits->dev, (dir / "dev.jsonl").string());
    write_manifest(out.splits->test, (dir / "test.jsonl").string());
  }
  write_text(dir / "class_summary.txt", with_provenance(prov, format_summary_text(out.summary)));
  write_text(dir / "class_summary.csv", with_provenance(prov, format_summary_csv(out.summary)));
  nlohmann::json provenance = {{"tool_version", tool_version()},
                               {"config_hash", config_hash(cfg)},
                               {"config", config_to_json(cfg)},
                               {"segments_in", n},
                               {"segments_selected", out.selected.segments.size()}};
  write_text(dir / "provenance.json", provenance.dump(2) + "\n");
  return out;
}

SplitResult cmd_split(const CorpusManifest& manifest, const SplitSpec& spec, std::uint64_t seed,
                      const std::string& out_dir) {
  SplitResult r = split_manifest(manifest, spec, seed);
  const fs::path dir(out_dir);
  ensure_dir(dir);
  write_manifest(r.train, (dir / "train.jsonl").string());
  write_manifest(r.dev, (dir / "dev.jsonl").string());
  write_manifest(r.test, (dir / "test.jsonl").string());
  return r;
}

SynthOutcome cmd_synth_gl(const std::string& mel_dir, const std::string& out_dir,
                          const PipelineConfig& cfg, unsigned jobs) {
  SynthOutcome out;
  const auto files = list_files(mel_dir, ".cfmx");
  if (files.empty()) {
    out.notices.push_back("no .cfmx files in " + mel_dir + "; nothing to synthesize");
    return out;
  }
  // Decode everything first so a corrupt file fails before any output.
  std::vector<dsp::FloatMatrix> mels;
  for (const auto& f : files) {
    mels.push_back(dsp::read_matrix(f.string()));
    if (mels.back().cols() != cfg.dsp.n_mels)
      throw InputError(f.string() + ": has " + std::to_string(mels.back().cols()) +
                       " mel channels, config expects " + std::to_string(cfg.dsp.n_mels));
    if (mels.back().rows() < 1) throw InputError(f.string() + ": no frames");
  }
  ensure_dir(out_dir);
  const auto fb = make_filterbank(cfg.dsp);
  std::vector<std::string> written(files.size());
  parallel_for(files.size(), jobs, [&](std::size_t i) {
    dsp::MelSpectrogram<double> mel;
    mel.values = mels[i].cast<double>();
    mel.scale = cfg.dsp.mel_scale;
    mel.config = cfg.dsp.stft;
    const dsp::Spectrogram<double> linear = dsp::invert_mel(mel, fb);
    const Eigen::Index length = std::max<Eigen::Index>(
        cfg.dsp.stft.win, (mel.frames() - 1) * cfg.dsp.stft.hop);
    dsp::Matrix<double> mag = linear.magnitude;
    if (dsp::frame_count(length, cfg.dsp.stft) != mag.rows()) {
      // Pad by repeating the last frame when the clip is shorter than one window.
      const Eigen::Index want = dsp::frame_count(length, cfg.dsp.stft);
      dsp::Matrix<double> padded(want, mag.cols());
      for (Eigen::Index r = 0; r < want; ++r) padded.row(r) = mag.row(std::min(r, mag.rows() - 1));
      mag = std::move(padded);
    }
    dsp::GriffinLimOptions opts;
    if (cfg.dsp.gl_random_init) {
      opts.init = dsp::GriffinLimOptions::Init::kRandomPhase;
      opts.seed = cfg.seed + i;
    }
    const auto gl = dsp::griffin_lim<double>(mag, cfg.dsp.gl_iterations, cfg.dsp.stft, length, opts);
    Waveform w;
    w.sample_rate_hz = cfg.dsp.stft.sample_rate_hz;
    w.samples = gl.signal.cwiseMax(-1.0).cwiseMin(1.0);
    const fs::path target = fs::path(out_dir) / (files[i].stem().string() + ".wav");
    write_wav(target.string(), w);
    written[i] = target.string();
  });
  out.written = std::move(written);
  return out;
}

std::vector<std::string> cmd_mel(const std::string& wav_dir, const std::string& out_dir,
                                 const PipelineConfig& cfg) {
  const auto fb = make_filterbank(cfg.dsp);
  ensure_dir(out_dir);
  std::vector<std::string> written;
  for (const auto& f : list_files(wav_dir, ".wav")) {
    const auto mel = analyze_mel(load_wav(f.string()), cfg.dsp, fb);
    const fs::path target = fs::path(out_dir) / (f.stem().string() + ".cfmx");
    dsp::write_matrix(target.string(), mel.values.cast<float>());
    written.push_back(target.string());
  }
  return written;
}

std::map<std::string, std::string> read_kaldi_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open transcript file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string trimmed = text::trim(line);
    if (trimmed.empty()) continue;
    const std::size_t sep = trimmed.find_first_of(" \t");
    const std::string id = trimmed.substr(0, sep);
    const std::string body = sep == std::string::npos ? "" : text::trim(trimmed.substr(sep + 1));
    if (!out.emplace(id, body).second)
      throw InputError(path + " line " + std::to_string(line_no) + ": duplicate id '" + id + "'");
  }
  return out;
}

EvalOutcome cmd_eval(const EvalInputs& in, const PipelineConfig& cfg, unsigned jobs) {
  const auto transcripts = read_kaldi_text(in.transcripts);
  const auto hypotheses = textproc::read_hypotheses(in.hypotheses);
  std::vector<std::string> ids;
  for (const auto& f : list_files(in.ref_dir, ".wav")) ids.push_back(f.stem().string());
  if (ids.empty()) throw InputError("eval: no reference WAV files in " + in.ref_dir);

  std::vector<std::string> missing;
  for (const auto& id : ids) {
    if (!fs::exists(fs::path(in.syn_dir) / (id + ".wav"))) missing.push_back(id + " (synthesized audio)");
    if (!transcripts.count(id)) missing.push_back(id + " (transcript)");
    if (!hypotheses.count(id)) missing.push_back(id + " (hypothesis)");
  }
  if (!missing.empty()) throw InputError("eval: unmatched ids: " + join_strings(missing, ", "));

  const auto fb = make_filterbank(cfg.dsp);
  const eval::TokenizeOptions tok = cfg.tokenize_options();
  EvalOutcome out;
  out.utterances.resize(ids.size());
  parallel_for(ids.size(), jobs, [&](std::size_t i) {
    const std::string& id = ids[i];
    UtteranceScore& u = out.utterances[i];
    u.id = id;
    const auto ref_words = eval::word_tokens(transcripts.at(id), tok);
    const auto hyp_words = eval::word_tokens(hypotheses.at(id), tok);
    if (ref_words.empty()) throw InputError("eval: empty reference transcript for " + id);
    u.words = eval::align(ref_words, hyp_words);
    u.chars = eval::align(eval::char_tokens(transcripts.at(id), tok),
                          eval::char_tokens(hypotheses.at(id), tok));
    const auto ref_mel = analyze_mel(load_wav((fs::path(in.ref_dir) / (id + ".wav")).string()), cfg.dsp, fb);
    const auto syn_mel = analyze_mel(load_wav((fs::path(in.syn_dir) / (id + ".wav")).string()), cfg.dsp, fb);
    u.mcd = eval::mcd(dsp::mel_cepstrum(ref_mel, cfg.dsp.n_cepstra),
                      dsp::mel_cepstrum(syn_mel, cfg.dsp.n_cepstra), cfg.dsp.use_dtw);
  });

  Eigen::VectorXd utt_mcd(static_cast<Eigen::Index>(ids.size()));
  for (std::size_t i = 0; i < out.utterances.size(); ++i) {
    const auto& u = out.utterances[i];
    out.word_subs += u.words.substitutions;
    out.word_ins += u.words.insertions;
    out.word_dels += u.words.deletions;
    out.word_ref += u.words.ref_len;
    out.char_subs += u.chars.substitutions;
    out.char_ins += u.chars.insertions;
    out.char_dels += u.chars.deletions;
    out.char_ref += u.chars.ref_len;
    utt_mcd[static_cast<Eigen::Index>(i)] = u.mcd.mean_db;
  }
  out.corpus.system_id = in.system_id;
  out.corpus.model = in.model.empty() ? in.system_id : in.model;
  out.corpus.reduction_factor = cfg.eval.reduction_factor;
  out.corpus.vowelized = in.vowelized;
  out.corpus.wer = 100.0 * static_cast<double>(out.word_subs + out.word_ins + out.word_dels) /
                   static_cast<double>(out.word_ref);
  out.corpus.cer = 100.0 * static_cast<double>(out.char_subs + out.char_ins + out.char_dels) /
                   static_cast<double>(out.char_ref);
  out.corpus.mcd_mean = utt_mcd.mean();
  out.corpus.mcd_std = std::sqrt((utt_mcd.array() - utt_mcd.mean()).square().mean());

  const fs::path dir(in.out_dir);
  ensure_dir(dir);
  const eval::Provenance prov = provenance_for(cfg);
  std::ostringstream utt;
  csv::write_row(utt, {"id", "word_sub", "word_ins", "word_del", "word_ref", "char_sub", "char_ins",
                       "char_del", "char_ref", "mcd_mean_db", "mcd_std_db", "mcd_frames"});
  for (const auto& u : out.utterances)
    csv::write_row(utt, {u.id, std::to_string(u.words.substitutions), std::to_string(u.words.insertions),
                         std::to_string(u.words.deletions), std::to_string(u.words.ref_len),
                         std::to_string(u.chars.substitutions), std::to_string(u.chars.insertions),
                         std::to_string(u.chars.deletions), std::to_string(u.chars.ref_len),
                         csv::format_double(u.mcd.mean_db), csv::format_double(u.mcd.std_db),
                         std::to_string(u.mcd.n_frames_aligned)});
  write_text(dir / "eval_utterances.csv", with_provenance(prov, utt.str()));
  write_text(dir / "eval_report.csv", eval::render_report_csv({out.corpus}, prov));
  write_text(dir / "eval_report.txt", eval::render_report_text({out.corpus}, prov));

  std::ostringstream breakdown;
  breakdown << "ID | Sub. | Ins. | Del. | CER\n"
            << in.system_id << " | " << out.char_subs << " | " << out.char_ins << " | "
            << out.char_dels << " | "
            << eval::format_percent(*out.corpus.cer / 100.0) << "\n";
  write_text(dir / "eval_cer_breakdown.txt", with_provenance(prov, breakdown.str()));
  return out;
}

}  // namespace corpusforge::pipeline
