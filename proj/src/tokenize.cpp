// src/tokenize.cpp

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

#include "corpusforge/eval/tokenize.hpp"

#include "corpusforge/utf8.hpp"

namespace corpusforge::eval {

std::vector<std::string> word_tokens(std::string_view text, const TokenizeOptions& opts) {
  std::u32string kept;
  for (char32_t c : text::to_u32(text)) {
    const bool punct = opts.punctuation ? opts.punctuation->find(c) != std::u32string::npos
                                        : text::is_punct(c);
    if (punct) continue;
    if (opts.strip_diacritics && text::is_arabic_diacritic(c)) continue;
    kept.push_back(c);
  }
  return text::split_whitespace(text::to_utf8(kept));
}

std::u32string char_tokens(std::string_view text, const TokenizeOptions& opts) {
  std::u32string out;
  bool pending_space = false;
  for (char32_t c : text::to_u32(text)) {
    if (text::is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (opts.strip_diacritics && text::is_arabic_diacritic(c)) continue;
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace corpusforge::eval
