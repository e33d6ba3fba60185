// include/corpusforge/eval/report.hpp

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
#include <utility>
#include <vector>

namespace corpusforge::eval {

// One system row of an objective evaluation. Rates are percentages.
struct EvalRow {
  std::string system_id;
  std::string model;
  std::optional<int> reduction_factor;
  std::optional<bool> vowelized;
  std::optional<double> wer;
  std::optional<double> cer;
  std::optional<double> mcd_mean;
  std::optional<double> mcd_std;

  bool operator==(const EvalRow&) const = default;
};

// Key/value lines written as '#' comments ahead of every report.
using Provenance = std::vector<std::pair<std::string, std::string>>;

// Columns ID | Model | R | Vowel. | WER | CER | MCD; rates and MCD at one
// decimal, MCD as "mean ± std".
std::string render_report_text(const std::vector<EvalRow>& rows, const Provenance& provenance = {});
std::string render_report_csv(const std::vector<EvalRow>& rows, const Provenance& provenance = {});
std::vector<EvalRow> parse_report_csv(const std::string& text);

}  // namespace corpusforge::eval
