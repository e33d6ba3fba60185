// include/corpusforge/eval/tokenize.hpp

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
#include <string_view>
#include <vector>

namespace corpusforge::eval {

struct TokenizeOptions {
  // Characters removed before word splitting; Unicode punctuation when unset.
  std::optional<std::u32string> punctuation;
  // Drop Arabic diacritic marks before character scoring.
  bool strip_diacritics = false;
};

// Whitespace-separated words after punctuation removal.
std::vector<std::string> word_tokens(std::string_view text, const TokenizeOptions& opts = {});

// Code points after collapsing whitespace runs to one space and trimming.
std::u32string char_tokens(std::string_view text, const TokenizeOptions& opts = {});

}  // namespace corpusforge::eval
