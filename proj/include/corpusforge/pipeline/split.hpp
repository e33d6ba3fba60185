// include/corpusforge/pipeline/split.hpp

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

#include <cstdint>

#include "corpusforge/corpus.hpp"
#include "corpusforge/pipeline/config.hpp"

namespace corpusforge::pipeline {

struct SplitResult {
  CorpusManifest train;
  CorpusManifest dev;
  CorpusManifest test;
};

// Disjoint cover of the manifest; each part keeps manifest order. Tail
// takes test from the end and dev just before it. Seeded-random draws
// test then dev from a Fisher-Yates shuffle driven by mt19937_64(seed).
// Throws InputError unless n_dev + n_test < manifest size.
SplitResult split_manifest(const CorpusManifest& manifest, const SplitSpec& spec,
                           std::uint64_t seed = 0);

}  // namespace corpusforge::pipeline
