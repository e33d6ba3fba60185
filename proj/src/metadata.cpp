// src/metadata.cpp

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

#include "corpusforge/metadata.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "corpusforge/csv.hpp"
#include "corpusforge/error.hpp"
#include "corpusforge/eval/align.hpp"
#include "corpusforge/utf8.hpp"

namespace corpusforge::metadata {

namespace {

std::optional<Field> parse_field(std::string_view name) {
  if (name == "program_name") return Field::kProgramName;
  if (name == "episode_title") return Field::kEpisodeTitle;
  if (name == "episode_date") return Field::kEpisodeDate;
  if (name == "speaker") return Field::kSpeaker;
  if (name == "topic") return Field::kTopic;
  return std::nullopt;
}

// Lower-cases ASCII and folds '-', '.', and spaces into '_' so that
// "Speaker Name", "speaker-name" and "SPEAKER_NAME" share one key.
std::string canonical_key(std::string_view key) {
  std::string k = text::to_lower_ascii(text::trim(key));
  std::string out;
  for (char c : k) {
    if (c == ' ' || c == '-' || c == '.') c = '_';
    if (c == '_' && !out.empty() && out.back() == '_') continue;
    out.push_back(c);
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

void assign(EpisodeMetadata& meta, Field field, const std::string& value,
            std::vector<std::string>& warnings, std::size_t line_no) {
  auto set_once = [&](std::string& slot, const char* name) {
    if (!slot.empty() && slot != value)
      warnings.push_back("line " + std::to_string(line_no) + ": repeated " + name +
                         " key, keeping first value");
    else
      slot = value;
  };
  switch (field) {
    case Field::kProgramName: set_once(meta.program_name, "program name"); break;
    case Field::kEpisodeTitle: set_once(meta.episode_title, "episode title"); break;
    case Field::kEpisodeDate: set_once(meta.episode_date, "episode date"); break;
    case Field::kSpeaker:
    case Field::kTopic: {
      auto& list = field == Field::kSpeaker ? meta.speaker_entries : meta.topics;
      std::string item;
      std::istringstream parts(value);
      while (std::getline(parts, item, ';')) {
        item = text::trim(item);
        if (!item.empty()) list.push_back(item);
      }
      break;
    }
  }
}

// Splits "key: value" and looks the key up.
std::optional<std::pair<Field, std::string>> match_pair(std::string_view segment,
                                                        const KeyVocabulary& vocab) {
  const std::size_t colon = segment.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  const std::string key = canonical_key(segment.substr(0, colon));
  if (key.empty()) return std::nullopt;
  auto it = vocab.keys.find(key);
  if (it == vocab.keys.end()) return std::nullopt;
  return std::make_pair(it->second, text::trim(segment.substr(colon + 1)));
}

}  // namespace

KeyVocabulary KeyVocabulary::defaults() {
  KeyVocabulary v;
  for (const char* k : {"program", "program_name", "programme", "show", "progam"})
    v.keys[k] = Field::kProgramName;
  for (const char* k : {"episode", "episode_title", "title", "epsiode_title"})
    v.keys[k] = Field::kEpisodeTitle;
  for (const char* k : {"date", "episode_date", "broadcast_date", "air_date"})
    v.keys[k] = Field::kEpisodeDate;
  for (const char* k : {"speaker", "speakers", "speaker_name", "speaker_names", "speeker",
                        "guest", "guests", "anchor", "presenter"})
    v.keys[k] = Field::kSpeaker;
  for (const char* k : {"topic", "topics", "subject", "subjects"}) v.keys[k] = Field::kTopic;
  return v;
}

KeyVocabulary KeyVocabulary::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open key vocabulary " + path);
  KeyVocabulary v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = text::trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t sep = line.find_first_of("\t=");
    if (sep == std::string::npos)
      throw InputError(path + " line " + std::to_string(line_no) + ": expected key<TAB>field");
    const auto field = parse_field(text::trim(line.substr(sep + 1)));
    if (!field)
      throw InputError(path + " line " + std::to_string(line_no) + ": unknown field '" +
                       text::trim(line.substr(sep + 1)) + "'");
    v.keys[canonical_key(line.substr(0, sep))] = *field;
  }
  return v;
}

ParseResult parse_metadata(std::string_view raw_text, const KeyVocabulary& vocab) {
  ParseResult result;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < raw_text.size()) {
    std::size_t end = raw_text.find('\n', pos);
    if (end == std::string_view::npos) end = raw_text.size();
    std::string_view line = raw_text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty()) continue;

    bool recognized = false;
    if (auto pair = match_pair(line, vocab)) {
      recognized = true;
      if (pair->second.empty())
        result.warnings.push_back("line " + std::to_string(line_no) + ": empty value");
      else
        assign(result.metadata, pair->first, pair->second, result.warnings, line_no);
    } else {
      // Inline tags inside transcript text, e.g. "... [speaker: Name] ...".
      std::size_t open = line.find('[');
      while (open != std::string_view::npos) {
        const std::size_t close = line.find(']', open + 1);
        if (close == std::string_view::npos) break;
        if (auto pair = match_pair(line.substr(open + 1, close - open - 1), vocab)) {
          recognized = true;
          if (!pair->second.empty())
            assign(result.metadata, pair->first, pair->second, result.warnings, line_no);
        }
        open = line.find('[', close + 1);
      }
    }
    if (!recognized) ++result.unrecognized_lines;
  }
  return result;
}

std::string normalize_name(std::string_view raw, const NormalizeOptions& opts) {
  if (text::trim(raw).empty()) throw InputError("normalize_name: empty name");
  std::u32string s = text::to_u32(text::nfc(raw));
  if (const auto slash = s.find(U'/'); slash != std::u32string::npos) s.resize(slash);
  if (opts.arabic_folding) {
    for (char32_t& c : s) {
      if (c == 0x0622 || c == 0x0623 || c == 0x0625 || c == 0x0671) c = 0x0627;
      else if (c == 0x0629) c = 0x0647;
    }
  }
  std::u32string collapsed;
  bool pending_space = false;
  for (char32_t c : s) {
    if (text::is_space(c)) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) collapsed.push_back(U' ');
    pending_space = false;
    collapsed.push_back(c);
  }
  std::size_t b = 0, e = collapsed.size();
  auto strip = [](char32_t c) { return text::is_space(c) || text::is_punct(c); };
  while (b < e && strip(collapsed[b])) ++b;
  while (e > b && strip(collapsed[e - 1])) --e;
  if (b == e) throw InputError("normalize_name: '" + std::string(raw) + "' normalizes to empty");
  return text::to_utf8(std::u32string_view(collapsed).substr(b, e - b));
}

std::vector<SpeakerRecord> link_speakers(const std::vector<std::string>& entries,
                                         const LinkOptions& opts) {
  std::map<std::string, SpeakerRecord> by_name;
  for (const auto& raw : entries) {
    auto ov = opts.overrides.find(raw);
    const std::string canonical =
        ov != opts.overrides.end() ? ov->second : normalize_name(raw, opts.normalize);
    SpeakerRecord& rec = by_name[canonical];
    rec.canonical_name = canonical;
    rec.variants.insert(raw);
    ++rec.segment_count;
  }

  std::vector<SpeakerRecord> records;
  for (auto& [_, rec] : by_name) records.push_back(std::move(rec));
  auto order = [](const SpeakerRecord& a, const SpeakerRecord& b) {
    if (a.segment_count != b.segment_count) return a.segment_count > b.segment_count;
    return a.canonical_name < b.canonical_name;
  };
  std::sort(records.begin(), records.end(), order);

  if (opts.fuzzy) {
    // Greedy single pass: each record joins the first earlier (larger)
    // record within the threshold.
    std::vector<std::u32string> names;
    for (const auto& r : records) names.push_back(text::to_u32(r.canonical_name));
    std::vector<std::size_t> parent(records.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t i = 0; i < records.size(); ++i)
      for (std::size_t k = 0; k < i; ++k) {
        if (parent[k] != k) continue;
        if (eval::normalized_edit_distance(names[k], names[i]) <= opts.fuzzy_threshold) {
          parent[i] = k;
          break;
        }
      }
    std::vector<SpeakerRecord> merged;
    std::map<std::size_t, std::size_t> slot;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (parent[i] == i) {
        slot[i] = merged.size();
        merged.push_back(records[i]);
      } else {
        SpeakerRecord& into = merged[slot[parent[i]]];
        into.variants.insert(records[i].variants.begin(), records[i].variants.end());
        into.segment_count += records[i].segment_count;
      }
    }
    std::sort(merged.begin(), merged.end(), order);
    records = std::move(merged);
  }
  return records;
}

std::map<std::string, std::string> read_override_map(const std::string& path) {
  const csv::Table table = csv::read_file(path);
  if (table.header != csv::Row{"raw", "canonical"})
    throw InputError(path + ": expected header raw,canonical");
  std::map<std::string, std::string> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    if (row[1].empty())
      throw InputError(path + " line " + std::to_string(table.line_numbers[i]) +
                       ": empty canonical name");
    out[row[0]] = row[1];
  }
  return out;
}

std::string speakers_csv(const std::vector<SpeakerRecord>& records) {
  std::ostringstream out;
  csv::write_row(out, {"canonical_name", "n_variants", "segment_count"});
  for (const auto& r : records)
    csv::write_row(out, {r.canonical_name, std::to_string(r.variants.size()),
                         std::to_string(r.segment_count)});
  return out.str();
}

}  // namespace corpusforge::metadata
