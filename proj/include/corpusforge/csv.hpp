// include/corpusforge/csv.hpp

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

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace corpusforge::csv {

using Row = std::vector<std::string>;

// RFC 4180 quoting. Lines starting with '#' are skipped by the reader so
// reports may carry provenance comments.
struct Table {
  Row header;
  std::vector<Row> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line per row
};

Row parse_line(std::string_view line);
Table read(std::istream& in);
Table read_file(const std::string& path);

std::string quote(std::string_view field);
void write_row(std::ostream& out, const Row& row);

// Shortest representation that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

}  // namespace corpusforge::csv
