// include/corpusforge/utf8.hpp

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

#include <string>
#include <string_view>
#include <vector>

namespace corpusforge::text {

// Invalid byte sequences decode to U+FFFD; decoding never fails.
std::u32string to_u32(std::string_view utf8);
std::string to_utf8(std::u32string_view codepoints);

// Unicode canonical composition (NFC).
std::string nfc(std::string_view utf8);

bool is_space(char32_t c);
bool is_punct(char32_t c);

// Arabic short-vowel and related marks, U+064B through U+0652.
inline bool is_arabic_diacritic(char32_t c) { return c >= 0x064B && c <= 0x0652; }

std::string trim(std::string_view s);
std::vector<std::string> split_whitespace(std::string_view s);
std::string to_lower_ascii(std::string_view s);

}  // namespace corpusforge::text
