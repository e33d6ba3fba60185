// src/mos.cpp

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

#include "corpusforge/eval/mos.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "corpusforge/csv.hpp"
#include "corpusforge/error.hpp"

namespace corpusforge::eval {

MosSummary aggregate_mos(std::span<const double> scores) {
  if (scores.empty()) throw InputError("aggregate_mos: no scores");
  double sum = 0.0;
  for (double s : scores) {
    if (!(s >= 1.0 && s <= 5.0))
      throw InputError("aggregate_mos: score " + csv::format_double(s) + " outside [1,5]");
    sum += s;
  }
  MosSummary summary;
  summary.n = scores.size();
  summary.mean = sum / static_cast<double>(summary.n);
  if (summary.n > 1) {
    double ss = 0.0;
    for (double s : scores) ss += (s - summary.mean) * (s - summary.mean);
    const double sd = std::sqrt(ss / static_cast<double>(summary.n - 1));
    summary.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(summary.n));
  }
  return summary;
}

std::string format_mos(const MosSummary& summary) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f ± %.2f", summary.mean, summary.ci95);
  return buf;
}

std::map<std::string, MosSummary> aggregate_mos_file(const std::string& path) {
  const csv::Table table = csv::read_file(path);
  const csv::Row expected = {"rater_id", "sample_id", "system_id", "score"};
  if (table.header != expected)
    throw InputError(path + ": expected header rater_id,sample_id,system_id,score");
  std::map<std::string, std::vector<double>> by_system;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    try {
      by_system[table.rows[i][2]].push_back(csv::parse_double(table.rows[i][3]));
    } catch (const InputError& e) {
      throw InputError(path + " line " + std::to_string(table.line_numbers[i]) + ": " + e.what());
    }
  }
  std::map<std::string, MosSummary> out;
  for (const auto& [system, scores] : by_system) {
    try {
      out[system] = aggregate_mos(scores);
    } catch (const InputError& e) {
      throw InputError(path + " system " + system + ": " + e.what());
    }
  }
  return out;
}

}  // namespace corpusforge::eval
