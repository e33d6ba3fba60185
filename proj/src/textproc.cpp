// src/textproc.cpp

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

#include "corpusforge/textproc.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "corpusforge/error.hpp"
#include "corpusforge/eval/align.hpp"
#include "corpusforge/utf8.hpp"

namespace corpusforge::textproc {

VowelizationReport validate_vowelization(std::string_view text) {
  const auto tokens = text::split_whitespace(text);
  if (tokens.empty()) throw InputError("validate_vowelization: empty text");
  VowelizationReport report;
  std::size_t marked = 0;
  for (const auto& token : tokens) {
    bool has_mark = false;
    for (char32_t c : text::to_u32(token)) has_mark = has_mark || text::is_arabic_diacritic(c);
    if (has_mark) ++marked;
    else report.undiacritized_tokens.push_back(token);
  }
  report.vowelized_ratio = static_cast<double>(marked) / static_cast<double>(tokens.size());
  return report;
}

Diacritizer Diacritizer::command(std::string command_line, CoveragePolicy policy) {
  if (command_line.empty()) throw InputError("diacritizer command is empty");
  Diacritizer d;
  d.command_ = std::move(command_line);
  d.policy_ = policy;
  return d;
}

Diacritizer Diacritizer::lookup_table(const std::string& path, CoveragePolicy policy) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open diacritizer table " + path);
  Diacritizer d;
  d.use_table_ = true;
  d.policy_ = policy;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      throw InputError(path + " line " + std::to_string(line_no) + ": expected plain<TAB>diacritized");
    d.table_[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return d;
}

std::string Diacritizer::run_command(std::string_view text) const {
  namespace fs = std::filesystem;
  std::string tmpl = (fs::temp_directory_path() / "corpusforge-diac-XXXXXX").string();
  const int fd = ::mkstemp(tmpl.data());
  if (fd < 0) throw IoError("cannot create temporary file for diacritizer input");
  ::close(fd);
  {
    std::ofstream out(tmpl, std::ios::binary);
    out << text;
  }
  const std::string full = "(" + command_ + ") < '" + tmpl + "'";
  FILE* pipe = ::popen(full.c_str(), "r");
  if (!pipe) {
    fs::remove(tmpl);
    throw IoError("cannot start diacritizer: " + command_);
  }
  std::string output;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, n);
  const int status = ::pclose(pipe);
  fs::remove(tmpl);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw IoError("diacritizer failed: " + command_);
  return output;
}

Diacritizer::Output Diacritizer::apply(std::string_view text) const {
  const auto input_tokens = text::split_whitespace(text);
  Output out;
  if (use_table_) {
    std::vector<std::string> tokens;
    for (const auto& t : input_tokens) {
      auto it = table_.find(t);
      tokens.push_back(it != table_.end() ? it->second : t);
    }
    out.text = join_strings(tokens, " ");
  } else {
    out.text = text::trim(run_command(text));
  }
  const auto output_tokens = text::split_whitespace(out.text);
  if (output_tokens.size() != input_tokens.size())
    throw InvariantError("diacritizer changed the token count from " +
                         std::to_string(input_tokens.size()) + " to " +
                         std::to_string(output_tokens.size()));
  if (input_tokens.empty()) return out;
  out.coverage = validate_vowelization(out.text);
  if (!out.coverage.undiacritized_tokens.empty()) {
    const std::string msg = std::to_string(out.coverage.undiacritized_tokens.size()) +
                            " undiacritized tokens: " +
                            join_strings(out.coverage.undiacritized_tokens, " ");
    if (policy_ == CoveragePolicy::kFail) throw InputError(msg);
    out.warnings.push_back(msg);
  }
  return out;
}

void RepairConfig::validate() const {
  if (!(token_similarity_max >= 0.0 && token_similarity_max <= 1.0))
    throw InputError("token_similarity_max must be in [0,1]");
  if (!(disagreement_flag_threshold >= 0.0 && disagreement_flag_threshold <= 1.0))
    throw InputError("disagreement_flag_threshold must be in [0,1]");
}

RepairResult repair_transcript(const std::vector<std::string>& reference,
                               const std::vector<std::string>& hypothesis,
                               const RepairConfig& cfg) {
  cfg.validate();
  if (reference.empty() || hypothesis.empty())
    throw InputError("repair_transcript: reference and hypothesis must be non-empty");
  const eval::AlignmentResult ar = eval::align(reference, hypothesis);
  RepairResult result;
  result.repaired = reference;
  result.disagreement = eval::error_rate(ar);
  for (const auto& step : ar.path) {
    if (step.op != eval::EditOp::kSubstitution) continue;
    const auto r = static_cast<std::size_t>(step.ref_index);
    const auto h = static_cast<std::size_t>(step.hyp_index);
    const double distance =
        eval::normalized_edit_distance(text::to_u32(reference[r]), text::to_u32(hypothesis[h]));
    TokenSubstitution sub{reference[r], hypothesis[h], distance <= cfg.token_similarity_max};
    if (sub.applied) result.repaired[r] = hypothesis[h];
    result.substitutions.push_back(std::move(sub));
  }
  return result;
}

bool flag_wrong_transcription(double disagreement, const RepairConfig& cfg) {
  if (!(disagreement >= 0.0)) throw InputError("disagreement must be >= 0");
  return disagreement > cfg.disagreement_flag_threshold;
}

std::map<std::string, std::string> parse_hypotheses(std::string_view text, const std::string& name) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const std::string where = name + " line " + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw InputError(where + "malformed JSON");
    }
    if (!j.is_object() || !j.contains("segment_id") || !j.contains("hypothesis_text") ||
        !j["segment_id"].is_string() || !j["hypothesis_text"].is_string())
      throw InputError(where + "expected string fields segment_id and hypothesis_text");
    const std::string id = j["segment_id"].get<std::string>();
    if (!out.emplace(id, j["hypothesis_text"].get<std::string>()).second)
      throw InputError(where + "duplicate segment_id '" + id + "'");
  }
  return out;
}

std::map<std::string, std::string> read_hypotheses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open hypothesis file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_hypotheses(buf.str(), path);
}

}  // namespace corpusforge::textproc
