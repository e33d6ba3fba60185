// src/manifest.cpp

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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "corpusforge/corpus.hpp"
#include "corpusforge/error.hpp"

namespace corpusforge {

using ojson = nlohmann::ordered_json;

namespace {

struct ClassNames {
  std::string_view wire;
  std::string_view display;
};

constexpr std::array<ClassNames, 6> kClassNames = {{
    {"background_music", "Background music"},
    {"wrong_transcription", "Wrong transcription"},
    {"overlapped_speech", "Overlapped speech"},
    {"wrong_speaker", "Wrong speaker"},
    {"bad_recording", "Bad recordings"},
    {"good_recording", "Good Segments"},
}};

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields = {
      "id",           "audio_path",     "start_s",
      "end_s",        "speaker_id",     "transcript_raw",
      "transcript_vowelized",           "transcript_repaired",
      "class_label",  "scores",         "sample_rate_hz"};
  return fields;
}

template <typename T>
T get_field(const ojson& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view to_string(SegmentClass c) {
  return kClassNames[static_cast<std::size_t>(c)].wire;
}

std::string_view display_name(SegmentClass c) {
  return kClassNames[static_cast<std::size_t>(c)].display;
}

std::optional<SegmentClass> parse_segment_class(std::string_view name) {
  for (SegmentClass c : kAllSegmentClasses)
    if (to_string(c) == name) return c;
  return std::nullopt;
}

void AudioSegment::validate() const {
  if (id.empty()) throw InvariantError("segment with empty id");
  if (!(std::isfinite(start_s) && std::isfinite(end_s)) || !(end_s - start_s > 0.0))
    throw InvariantError("segment " + id + ": end_s must exceed start_s");
  if (sample_rate_hz <= 0)
    throw InvariantError("segment " + id + ": sample_rate_hz must be positive");
  for (const auto& [scorer, value] : scores)
    if (!(value >= 1.0 && value <= 5.0))
      throw InvariantError("segment " + id + ": score '" + scorer +
                           "' outside [1,5]");
}

const AudioSegment* CorpusManifest::find(std::string_view id) const {
  for (const auto& s : segments)
    if (s.id == id) return &s;
  return nullptr;
}

ojson segment_to_json(const AudioSegment& s) {
  ojson j = ojson::object();
  j["id"] = s.id;
  j["audio_path"] = s.audio_path;
  j["start_s"] = s.start_s;
  j["end_s"] = s.end_s;
  j["speaker_id"] = s.speaker_id;
  j["transcript_raw"] = s.transcript_raw;
  if (s.transcript_vowelized) j["transcript_vowelized"] = *s.transcript_vowelized;
  if (s.transcript_repaired) j["transcript_repaired"] = *s.transcript_repaired;
  if (s.class_label) j["class_label"] = std::string(to_string(*s.class_label));
  ojson scores = ojson::object();
  for (const auto& [k, v] : s.scores) scores[k] = v;
  j["scores"] = std::move(scores);
  j["sample_rate_hz"] = s.sample_rate_hz;
  for (const auto& [k, v] : s.extra.items()) j[k] = v;
  return j;
}

AudioSegment segment_from_json(const ojson& j) {
  if (!j.is_object()) throw InputError("segment line is not a JSON object");
  AudioSegment s;
  s.id = get_field<std::string>(j, "id");
  s.audio_path = get_field<std::string>(j, "audio_path");
  s.start_s = get_field<double>(j, "start_s");
  s.end_s = get_field<double>(j, "end_s");
  s.speaker_id = j.contains("speaker_id") ? get_field<std::string>(j, "speaker_id") : "";
  s.transcript_raw =
      j.contains("transcript_raw") ? get_field<std::string>(j, "transcript_raw") : "";
  if (j.contains("transcript_vowelized") && !j["transcript_vowelized"].is_null())
    s.transcript_vowelized = get_field<std::string>(j, "transcript_vowelized");
  if (j.contains("transcript_repaired") && !j["transcript_repaired"].is_null())
    s.transcript_repaired = get_field<std::string>(j, "transcript_repaired");
  if (j.contains("class_label") && !j["class_label"].is_null()) {
    auto name = get_field<std::string>(j, "class_label");
    auto c = parse_segment_class(name);
    if (!c) throw InputError("unknown class_label '" + name + "'");
    s.class_label = *c;
  }
  if (j.contains("scores")) {
    const ojson& scores = j["scores"];
    if (!scores.is_object()) throw InputError("field 'scores' must be an object");
    for (const auto& [k, v] : scores.items()) {
      if (!v.is_number()) throw InputError("score '" + k + "' is not a number");
      s.scores[k] = v.get<double>();
    }
  }
  if (j.contains("sample_rate_hz")) s.sample_rate_hz = get_field<int>(j, "sample_rate_hz");
  for (const auto& [k, v] : j.items())
    if (!known_fields().count(k)) s.extra[k] = v;
  s.validate();
  return s;
}

CorpusManifest parse_manifest(std::string_view text) {
  CorpusManifest m;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const std::string where = "manifest line " + std::to_string(line_no) + ": ";
    ojson j;
    try {
      j = ojson::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(where + "malformed JSON (" + e.what() + ")");
    }
    if (j.is_object() && j.size() == 1 && j.contains("manifest")) {
      if (line_no != 1 || !m.segments.empty())
        throw InputError(where + "provenance record must be the first line");
      const ojson& p = j["manifest"];
      if (!p.is_object()) throw InputError(where + "provenance must be an object");
      m.source_name = p.value("source_name", "");
      m.created_at = p.value("created_at", "");
      m.tool_version = p.value("tool_version", "");
      continue;
    }
    AudioSegment s;
    try {
      s = segment_from_json(j);
    } catch (const Error& e) {
      throw InputError(where + e.what());
    }
    if (!seen.insert(s.id).second)
      throw InputError(where + "duplicate segment id '" + s.id + "'");
    m.segments.push_back(std::move(s));
  }
  return m;
}

CorpusManifest read_manifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_manifest(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string serialize_manifest(const CorpusManifest& m) {
  std::set<std::string> seen;
  std::string out;
  if (m.has_provenance()) {
    ojson p = ojson::object();
    p["source_name"] = m.source_name;
    p["created_at"] = m.created_at;
    p["tool_version"] = m.tool_version;
    ojson header = ojson::object();
    header["manifest"] = std::move(p);
    out += header.dump() + "\n";
  }
  for (const auto& s : m.segments) {
    s.validate();
    if (!seen.insert(s.id).second)
      throw InvariantError("duplicate segment id '" + s.id + "'");
    out += segment_to_json(s).dump() + "\n";
  }
  return out;
}

void write_manifest(const CorpusManifest& m, const std::string& path) {
  const std::string text = serialize_manifest(m);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

ClassSummary summarize_corpus(const CorpusManifest& m) {
  ClassSummary summary;
  for (std::size_t i = 0; i < kAllSegmentClasses.size(); ++i)
    summary.rows[i].label = kAllSegmentClasses[i];
  for (const auto& s : m.segments) {
    if (!s.class_label) throw InputError("segment " + s.id + " is not classified");
    ClassRow& row = summary.rows[static_cast<std::size_t>(*s.class_label)];
    ++row.segments;
    row.seconds += s.duration_s();
  }
  for (const auto& row : summary.rows) {
    summary.total_segments += row.segments;
    summary.total_seconds += row.seconds;
  }
  return summary;
}

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string format_summary_text(const ClassSummary& summary, int minute_decimals) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-22s %8s %10s\n", "Class", "# Seg.", "Dur.");
  out << line;
  for (const auto& row : summary.rows) {
    std::snprintf(line, sizeof(line), "%-22s %8zu %10s\n",
                  std::string(display_name(row.label)).c_str(), row.segments,
                  fixed(row.minutes(), minute_decimals).c_str());
    out << line;
  }
  std::snprintf(line, sizeof(line), "%-22s %8zu %10s\n", "Total", summary.total_segments,
                fixed(summary.total_seconds / 60.0, minute_decimals).c_str());
  out << line;
  return out.str();
}

std::string format_summary_csv(const ClassSummary& summary, int minute_decimals) {
  std::string out = "class,segments,minutes\n";
  for (const auto& row : summary.rows)
    out += std::string(to_string(row.label)) + "," + std::to_string(row.segments) + "," +
           fixed(row.minutes(), minute_decimals) + "\n";
  out += "total," + std::to_string(summary.total_segments) + "," +
         fixed(summary.total_seconds / 60.0, minute_decimals) + "\n";
  return out;
}

}  // namespace corpusforge
