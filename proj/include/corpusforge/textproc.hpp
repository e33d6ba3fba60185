// include/corpusforge/textproc.hpp

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
#include <string_view>
#include <vector>

namespace corpusforge::textproc {

struct VowelizationReport {
  double vowelized_ratio = 0.0;
  std::vector<std::string> undiacritized_tokens;
};

// Share of whitespace tokens carrying at least one mark in U+064B..U+0652.
// Throws InputError on text without tokens.
VowelizationReport validate_vowelization(std::string_view text);

enum class CoveragePolicy { kFail, kWarn };

// External diacritizer. A command receives UTF-8 text on stdin and must
// print the diacritized text on stdout with the same token count; a lookup
// table maps plain tokens to diacritized ones (TSV, unknown tokens kept).
class Diacritizer {
 public:
  static Diacritizer command(std::string command_line, CoveragePolicy policy = CoveragePolicy::kWarn);
  static Diacritizer lookup_table(const std::string& path, CoveragePolicy policy = CoveragePolicy::kWarn);

  struct Output {
    std::string text;
    VowelizationReport coverage;
    std::vector<std::string> warnings;
  };

  // Throws InvariantError when the token count changes and InputError when
  // coverage is incomplete under CoveragePolicy::kFail.
  Output apply(std::string_view text) const;

 private:
  Diacritizer() = default;
  std::string run_command(std::string_view text) const;

  std::string command_;
  std::map<std::string, std::string> table_;
  bool use_table_ = false;
  CoveragePolicy policy_ = CoveragePolicy::kWarn;
};

struct RepairConfig {
  double token_similarity_max = 0.5;
  double disagreement_flag_threshold = 0.20;

  void validate() const;
};

struct TokenSubstitution {
  std::string ref_token;
  std::string hyp_token;
  bool applied = false;  // distance within token_similarity_max

  bool operator==(const TokenSubstitution&) const = default;
};

struct RepairResult {
  std::vector<std::string> repaired;
  double disagreement = 0.0;  // token error rate of hypothesis vs reference
  std::vector<TokenSubstitution> substitutions;
};

// Replaces a reference token by its aligned hypothesis token only when the
// pair is a substitution within token_similarity_max normalized character
// distance. Insertions and deletions are never applied.
RepairResult repair_transcript(const std::vector<std::string>& reference,
                               const std::vector<std::string>& hypothesis,
                               const RepairConfig& cfg = {});

// True iff disagreement > disagreement_flag_threshold.
bool flag_wrong_transcription(double disagreement, const RepairConfig& cfg = {});

// JSON Lines of {"segment_id": ..., "hypothesis_text": ...}.
std::map<std::string, std::string> read_hypotheses(const std::string& path);
std::map<std::string, std::string> parse_hypotheses(std::string_view text,
                                                    const std::string& name = "<hypotheses>");

}  // namespace corpusforge::textproc
