// tools/corpusforge.cpp

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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "corpusforge/corpus.hpp"
#include "corpusforge/csv.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/eval/mos.hpp"
#include "corpusforge/eval/report.hpp"
#include "corpusforge/metadata.hpp"
#include "corpusforge/pipeline/commands.hpp"
#include "corpusforge/pipeline/config.hpp"
#include "corpusforge/pipeline/split.hpp"

namespace cf = corpusforge;
namespace fs = std::filesystem;
using cf::pipeline::PipelineConfig;

namespace {

struct Globals {
  std::string config_path;
  unsigned jobs = 1;
  bool verbose = false;
};

PipelineConfig load(const Globals& g) {
  std::string path = g.config_path;
  if (path.empty())
    if (const char* env = std::getenv("CORPUSFORGE_CONFIG")) path = env;
  if (path.empty()) return cf::pipeline::parse_config(nlohmann::json::object());
  if (g.verbose) std::cerr << "config: " << path << "\n";
  return cf::pipeline::load_config(path);
}

void warn_all(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cf::IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw cf::IoError("cannot write " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpusforge: broadcast speech corpus curation and TTS evaluation"};
  app.set_version_flag("--version", cf::pipeline::tool_version());
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "JSON config (falls back to $CORPUSFORGE_CONFIG)");
  app.add_option("--jobs", g.jobs, "worker threads for per-segment stages")
      ->check(CLI::Range(1u, 256u));
  app.add_flag("--verbose", g.verbose, "log progress to stderr");
  app.fallthrough();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "scan corpus_root into a manifest");
  std::string ingest_root, ingest_out;
  ingest->add_option("--corpus-root", ingest_root, "overrides paths.corpus_root");
  ingest->add_option("-o,--out", ingest_out, "manifest path (default <output_dir>/manifest.jsonl)");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "score, classify, select and split");

  // split
  auto* split = app.add_subcommand("split", "partition a manifest into train/dev/test");
  std::string split_manifest, split_out;
  std::optional<std::size_t> n_dev, n_test;
  std::optional<std::string> strategy;
  std::optional<std::uint64_t> split_seed;
  split->add_option("manifest", split_manifest, "input manifest")->required();
  split->add_option("-o,--out-dir", split_out, "output directory (default output_dir)");
  split->add_option("--n-dev", n_dev);
  split->add_option("--n-test", n_test);
  split->add_option("--strategy", strategy)->check(CLI::IsMember({"tail", "seeded-random"}));
  split->add_option("--seed", split_seed);

  // synth-gl
  auto* synth = app.add_subcommand("synth-gl", "Griffin-Lim synthesis from log-mel files");
  std::string synth_in, synth_out;
  synth->add_option("mel_dir", synth_in, "directory of .cfmx log-mel files")->required();
  synth->add_option("-o,--out-dir", synth_out, "WAV output directory")->required();

  // mel
  auto* mel = app.add_subcommand("mel", "write .cfmx log-mel files for a WAV directory");
  std::string mel_in, mel_out;
  mel->add_option("wav_dir", mel_in)->required();
  mel->add_option("-o,--out-dir", mel_out)->required();

  // eval
  auto* ev = app.add_subcommand("eval", "WER/CER/MCD of synthesized speech");
  cf::pipeline::EvalInputs eval_in;
  std::optional<bool> vowelized;
  ev->add_option("--ref-dir", eval_in.ref_dir, "reference WAVs")->required();
  ev->add_option("--syn-dir", eval_in.syn_dir, "synthesized WAVs")->required();
  ev->add_option("--transcripts", eval_in.transcripts, "'<id> <text>' per line")->required();
  ev->add_option("--hyps", eval_in.hypotheses, "ASR hypotheses JSONL")->required();
  ev->add_option("-o,--out-dir", eval_in.out_dir, "report directory (default output_dir)");
  ev->add_option("--system-id", eval_in.system_id);
  ev->add_option("--model", eval_in.model);
  ev->add_option("--vowelized", vowelized, "true or false; omitted means N/A");

  // report
  auto* report = app.add_subcommand("report", "merge eval CSVs or aggregate MOS ratings");
  std::vector<std::string> report_inputs;
  std::string mos_file, report_format = "text", report_out;
  report->add_option("reports", report_inputs, "eval_report.csv files");
  report->add_option("--mos", mos_file, "rating CSV rater_id,sample_id,system_id,score");
  report->add_option("--format", report_format)->check(CLI::IsMember({"text", "csv"}));
  report->add_option("-o,--out", report_out);

  // speakers
  auto* speakers = app.add_subcommand("speakers", "link speaker names across metadata files");
  std::vector<std::string> meta_inputs;
  std::string speakers_out;
  bool fuzzy = false;
  speakers->add_option("inputs", meta_inputs, "metadata files or directories of *.meta")->required();
  speakers->add_flag("--fuzzy", fuzzy, "merge names within speakers.fuzzy_threshold");
  speakers->add_option("-o,--out", speakers_out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    PipelineConfig cfg = load(g);
    if (ingest->parsed()) {
      if (!ingest_root.empty()) cfg.paths.corpus_root = ingest_root;
      auto r = cf::pipeline::cmd_ingest(cfg);
      warn_all(r.warnings);
      if (ingest_out.empty()) {
        fs::create_directories(cfg.paths.output_dir);
        ingest_out = (fs::path(cfg.paths.output_dir) / "manifest.jsonl").string();
      }
      cf::write_manifest(r.manifest, ingest_out);
      std::cout << r.manifest.segments.size() << " segments -> " << ingest_out << "\n";
    } else if (pipeline->parsed()) {
      auto r = cf::pipeline::cmd_pipeline(cfg, g.jobs);
      warn_all(r.warnings);
      std::cout << cf::format_summary_text(r.summary);
      std::cout << "selected " << r.selected.segments.size() << " of "
                << r.classified.segments.size() << " segments -> " << cfg.paths.output_dir << "\n";
    } else if (split->parsed()) {
      cf::pipeline::SplitSpec spec = cfg.split;
      if (n_dev) spec.n_dev = *n_dev;
      if (n_test) spec.n_test = *n_test;
      if (strategy)
        spec.strategy = *strategy == "tail" ? cf::pipeline::SplitStrategy::kTail
                                            : cf::pipeline::SplitStrategy::kSeededRandom;
      const auto r = cf::pipeline::cmd_split(cf::read_manifest(split_manifest), spec,
                                             split_seed.value_or(cfg.seed),
                                             split_out.empty() ? cfg.paths.output_dir : split_out);
      std::cout << "train " << r.train.segments.size() << ", dev " << r.dev.segments.size()
                << ", test " << r.test.segments.size() << "\n";
    } else if (synth->parsed()) {
      auto r = cf::pipeline::cmd_synth_gl(synth_in, synth_out, cfg, g.jobs);
      for (const auto& n : r.notices) std::cout << n << "\n";
      if (g.verbose)
        for (const auto& w : r.written) std::cerr << "wrote " << w << "\n";
      if (!r.written.empty()) std::cout << r.written.size() << " files -> " << synth_out << "\n";
    } else if (mel->parsed()) {
      auto written = cf::pipeline::cmd_mel(mel_in, mel_out, cfg);
      std::cout << written.size() << " files -> " << mel_out << "\n";
    } else if (ev->parsed()) {
      eval_in.vowelized = vowelized;
      if (eval_in.out_dir.empty()) eval_in.out_dir = cfg.paths.output_dir;
      auto r = cf::pipeline::cmd_eval(eval_in, cfg, g.jobs);
      std::cout << cf::eval::render_report_text({r.corpus});
    } else if (report->parsed()) {
      if (report_inputs.empty() == mos_file.empty())
        throw cf::InputError("report: give either eval CSV files or --mos, not both or neither");
      std::string text;
      if (!mos_file.empty()) {
        std::ostringstream out;
        const auto mos = cf::eval::aggregate_mos_file(mos_file);
        if (report_format == "csv") {
          cf::csv::write_row(out, {"system_id", "mean", "ci95", "n"});
          for (const auto& [sys, m] : mos)
            cf::csv::write_row(out, {sys, cf::csv::format_double(m.mean),
                                     cf::csv::format_double(m.ci95), std::to_string(m.n)});
        } else {
          out << "System | MOS\n";
          for (const auto& [sys, m] : mos) out << sys << " | " << cf::eval::format_mos(m) << "\n";
        }
        text = out.str();
      } else {
        std::vector<cf::eval::EvalRow> rows;
        for (const auto& path : report_inputs) {
          auto part = cf::eval::parse_report_csv(slurp(path));
          rows.insert(rows.end(), part.begin(), part.end());
        }
        const auto prov = cf::pipeline::provenance_for(cfg);
        text = report_format == "csv" ? cf::eval::render_report_csv(rows, prov)
                                      : cf::eval::render_report_text(rows, prov);
      }
      emit(text, report_out);
    } else if (speakers->parsed()) {
      const auto vocab = cfg.paths.metadata_keys.empty()
                             ? cf::metadata::KeyVocabulary::defaults()
                             : cf::metadata::KeyVocabulary::from_file(cfg.paths.metadata_keys);
      std::vector<fs::path> files;
      for (const auto& in : meta_inputs) {
        if (fs::is_directory(in)) {
          std::vector<fs::path> found;
          for (const auto& e : fs::directory_iterator(in))
            if (e.is_regular_file() && e.path().extension() == ".meta") found.push_back(e.path());
          std::sort(found.begin(), found.end());
          files.insert(files.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(in)) {
          files.emplace_back(in);
        } else {
          throw cf::InputError("speakers: no such file or directory: " + in);
        }
      }
      std::vector<std::string> entries;
      for (const auto& f : files) {
        auto parsed = cf::metadata::parse_metadata(slurp(f.string()), vocab);
        for (const auto& w : parsed.warnings) std::cerr << "warning: " << f.string() << ": " << w << "\n";
        entries.insert(entries.end(), parsed.metadata.speaker_entries.begin(),
                       parsed.metadata.speaker_entries.end());
      }
      auto opts = cfg.speakers;
      if (fuzzy) opts.fuzzy = true;
      if (!cfg.paths.speaker_overrides.empty())
        opts.overrides = cf::metadata::read_override_map(cfg.paths.speaker_overrides);
      emit(cf::metadata::speakers_csv(cf::metadata::link_speakers(entries, opts)), speakers_out);
    }
  } catch (const cf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
