// src/report.cpp

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

#include "corpusforge/eval/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "corpusforge/csv.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/eval/align.hpp"
#include "corpusforge/utf8.hpp"

namespace corpusforge::eval {

std::string format_percent(double fraction, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, 100.0 * fraction);
  return buf;
}

namespace {

std::string one_decimal(const std::optional<double>& v) {
  if (!v) return "N/A";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", *v);
  return buf;
}

std::string mcd_cell(const EvalRow& row) {
  if (!row.mcd_mean) return "N/A";
  std::string cell = one_decimal(row.mcd_mean);
  if (row.mcd_std) cell += " ± " + one_decimal(row.mcd_std);
  return cell;
}

std::size_t display_width(const std::string& s) { return text::to_u32(s).size(); }

void write_provenance(std::ostream& out, const Provenance& provenance) {
  for (const auto& [key, value] : provenance) out << "# " << key << ": " << value << '\n';
}

constexpr std::array<const char*, 8> kCsvHeader = {
    "id", "model", "r", "vowelized", "wer", "cer", "mcd_mean", "mcd_std"};

std::string opt_number(const std::optional<double>& v) {
  return v ? csv::format_double(*v) : std::string();
}

std::optional<double> parse_opt_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return csv::parse_double(s);
}

}  // namespace

std::string render_report_text(const std::vector<EvalRow>& rows, const Provenance& provenance) {
  using Cells = std::array<std::string, 7>;
  std::vector<Cells> table;
  table.push_back({"ID", "Model", "R", "Vowel.", "WER", "CER", "MCD"});
  for (const auto& row : rows) {
    table.push_back({row.system_id, row.model,
                     row.reduction_factor ? std::to_string(*row.reduction_factor) : "N/A",
                     row.vowelized ? (*row.vowelized ? "✓" : "") : "N/A", one_decimal(row.wer),
                     one_decimal(row.cer), mcd_cell(row)});
  }
  std::array<std::size_t, 7> width{};
  for (const auto& cells : table)
    for (std::size_t c = 0; c < cells.size(); ++c)
      width[c] = std::max(width[c], display_width(cells[c]));

  std::ostringstream out;
  write_provenance(out, provenance);
  for (const auto& cells : table) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string pad(width[c] - display_width(cells[c]), ' ');
      if (c) line += " | ";
      // Text columns left-aligned, numbers right-aligned; the last column
      // is not padded.
      if (c < 2 || c == 3) line += cells[c] + (c + 1 < cells.size() ? pad : "");
      else if (c + 1 < cells.size()) line += pad + cells[c];
      else line += cells[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  out << "(WER and CER in %, MCD in dB as mean ± std)\n";
  return out.str();
}

std::string render_report_csv(const std::vector<EvalRow>& rows, const Provenance& provenance) {
  std::ostringstream out;
  write_provenance(out, provenance);
  csv::write_row(out, csv::Row(kCsvHeader.begin(), kCsvHeader.end()));
  for (const auto& row : rows) {
    csv::write_row(out, {row.system_id, row.model,
                         row.reduction_factor ? std::to_string(*row.reduction_factor) : "",
                         row.vowelized ? (*row.vowelized ? "1" : "0") : "", opt_number(row.wer),
                         opt_number(row.cer), opt_number(row.mcd_mean), opt_number(row.mcd_std)});
  }
  return out.str();
}

std::vector<EvalRow> parse_report_csv(const std::string& text) {
  std::istringstream in(text);
  const csv::Table table = csv::read(in);
  if (table.header != csv::Row(kCsvHeader.begin(), kCsvHeader.end()))
    throw InputError("report CSV: unexpected header");
  std::vector<EvalRow> rows;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const csv::Row& r = table.rows[i];
    EvalRow row;
    try {
      row.system_id = r[0];
      row.model = r[1];
      if (!r[2].empty()) row.reduction_factor = static_cast<int>(csv::parse_double(r[2]));
      if (r[3] == "1") row.vowelized = true;
      else if (r[3] == "0") row.vowelized = false;
      else if (!r[3].empty()) throw InputError("vowelized must be 0, 1 or empty");
      row.wer = parse_opt_number(r[4]);
      row.cer = parse_opt_number(r[5]);
      row.mcd_mean = parse_opt_number(r[6]);
      row.mcd_std = parse_opt_number(r[7]);
    } catch (const InputError& e) {
      throw InputError("report CSV line " + std::to_string(table.line_numbers[i]) + ": " + e.what());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace corpusforge::eval
