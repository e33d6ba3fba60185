// include/corpusforge/corpus.hpp

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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace corpusforge {

// Exactly one class per segment. GoodRecording means no other class fired.
enum class SegmentClass {
  kBackgroundMusic,
  kWrongTranscription,
  kOverlappedSpeech,
  kWrongSpeaker,
  kBadRecording,
  kGoodRecording,
};

inline constexpr std::array<SegmentClass, 6> kAllSegmentClasses = {
    SegmentClass::kBackgroundMusic,  SegmentClass::kWrongTranscription,
    SegmentClass::kOverlappedSpeech, SegmentClass::kWrongSpeaker,
    SegmentClass::kBadRecording,     SegmentClass::kGoodRecording,
};

// snake_case wire name, e.g. "good_recording".
std::string_view to_string(SegmentClass c);
// Human-readable row label used in summary tables.
std::string_view display_name(SegmentClass c);
std::optional<SegmentClass> parse_segment_class(std::string_view name);

struct AudioSegment {
  std::string id;
  std::string audio_path;
  double start_s = 0.0;
  double end_s = 0.0;
  std::string speaker_id;
  std::string transcript_raw;
  std::optional<std::string> transcript_vowelized;
  std::optional<std::string> transcript_repaired;
  std::optional<SegmentClass> class_label;
  std::map<std::string, double> scores;
  int sample_rate_hz = 16000;
  // Fields this version does not know about; written back unchanged.
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  double duration_s() const { return end_s - start_s; }

  // Throws InvariantError naming the segment when a field is out of range.
  void validate() const;

  bool operator==(const AudioSegment&) const = default;
};

struct CorpusManifest {
  std::vector<AudioSegment> segments;
  std::string source_name;
  std::string created_at;
  std::string tool_version;

  bool has_provenance() const {
    return !source_name.empty() || !created_at.empty() || !tool_version.empty();
  }
  const AudioSegment* find(std::string_view id) const;

  bool operator==(const CorpusManifest&) const = default;
};

// JSON Lines. An optional first line {"manifest": {...}} carries the
// provenance fields; every other line is one segment object.
CorpusManifest read_manifest(const std::string& path);
CorpusManifest parse_manifest(std::string_view text);
void write_manifest(const CorpusManifest& manifest, const std::string& path);
std::string serialize_manifest(const CorpusManifest& manifest);

nlohmann::ordered_json segment_to_json(const AudioSegment& segment);
AudioSegment segment_from_json(const nlohmann::ordered_json& j);

struct ClassRow {
  SegmentClass label;
  std::size_t segments = 0;
  double seconds = 0.0;
  double minutes() const { return seconds / 60.0; }
};

struct ClassSummary {
  std::array<ClassRow, 6> rows;  // in kAllSegmentClasses order
  std::size_t total_segments = 0;
  double total_seconds = 0.0;

  const ClassRow& row(SegmentClass c) const { return rows[static_cast<std::size_t>(c)]; }
};

// Throws InputError when a segment carries no class label.
ClassSummary summarize_corpus(const CorpusManifest& manifest);

// Per-class "# Seg." and "Dur." (minutes) table; minutes rounded to
// `minute_decimals`.
std::string format_summary_text(const ClassSummary& summary, int minute_decimals = 0);
std::string format_summary_csv(const ClassSummary& summary, int minute_decimals = 2);

}  // namespace corpusforge
