// include/corpusforge/eval/mos.hpp

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
#include <span>
#include <string>

namespace corpusforge::eval {

struct MosSummary {
  double mean = 0.0;
  double ci95 = 0.0;  // 1.96 * sample sd / sqrt(n); 0 when n == 1
  std::size_t n = 0;
};

MosSummary aggregate_mos(std::span<const double> scores);

// "4.1 ± 0.06": mean to one decimal, interval to two.
std::string format_mos(const MosSummary& summary);

// CSV with header rater_id,sample_id,system_id,score; one summary per
// system_id.
std::map<std::string, MosSummary> aggregate_mos_file(const std::string& path);

}  // namespace corpusforge::eval
