// include/corpusforge/metadata.hpp

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
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace corpusforge::metadata {

struct EpisodeMetadata {
  std::string program_name;
  std::string episode_title;
  std::string episode_date;
  std::vector<std::string> speaker_entries;  // raw, in document order
  std::vector<std::string> topics;

  bool operator==(const EpisodeMetadata&) const = default;
};

enum class Field { kProgramName, kEpisodeTitle, kEpisodeDate, kSpeaker, kTopic };

// Lower-cased key spellings per field. Broadcast metadata uses
// non-standard, often misspelled keys, so the vocabulary is data.
struct KeyVocabulary {
  std::map<std::string, Field> keys;

  static KeyVocabulary defaults();
  // Lines "key<TAB or =>field" with field one of program_name,
  // episode_title, episode_date, speaker, topic; '#' comments allowed.
  static KeyVocabulary from_file(const std::string& path);
};

struct ParseResult {
  EpisodeMetadata metadata;
  std::vector<std::string> warnings;
  std::size_t unrecognized_lines = 0;
};

// Total: never throws on content. Recognizes "key: value" lines anywhere
// in the document and inline "[key: value]" tags inside transcript lines.
ParseResult parse_metadata(std::string_view raw_text,
                           const KeyVocabulary& vocabulary = KeyVocabulary::defaults());

struct NormalizeOptions {
  // Alef variants to bare alef, ta marbuta to ha.
  bool arabic_folding = false;
};

// NFC, role suffix after the first '/' dropped, whitespace collapsed,
// leading/trailing punctuation stripped. Throws InputError when the input or
// the result is empty.
std::string normalize_name(std::string_view raw, const NormalizeOptions& opts = {});

struct SpeakerRecord {
  std::string canonical_name;
  std::set<std::string> variants;
  std::size_t segment_count = 0;

  bool operator==(const SpeakerRecord&) const = default;
};

struct LinkOptions {
  NormalizeOptions normalize;
  // raw -> canonical replacements applied before normalization.
  std::map<std::string, std::string> overrides;
  bool fuzzy = false;
  double fuzzy_threshold = 0.2;  // normalized character edit distance
};

// Groups raw name occurrences by normalized form. segment_count counts
// occurrences. Sorted by descending segment_count, then canonical_name.
std::vector<SpeakerRecord> link_speakers(const std::vector<std::string>& entries,
                                         const LinkOptions& opts = {});

// Two-column CSV raw,canonical.
std::map<std::string, std::string> read_override_map(const std::string& path);

// canonical_name,n_variants,segment_count
std::string speakers_csv(const std::vector<SpeakerRecord>& records);

}  // namespace corpusforge::metadata
