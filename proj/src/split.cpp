// src/split.cpp

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

#include "corpusforge/pipeline/split.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "corpusforge/error.hpp"

namespace corpusforge::pipeline {

namespace {

// Uniform integer in [0, bound) by rejection; the standard distributions
// are implementation-defined and would make splits platform-dependent.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

CorpusManifest subset(const CorpusManifest& m, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  CorpusManifest out;
  out.source_name = m.source_name;
  out.created_at = m.created_at;
  out.tool_version = m.tool_version;
  for (std::size_t i : idx) out.segments.push_back(m.segments[i]);
  return out;
}

}  // namespace

SplitResult split_manifest(const CorpusManifest& manifest, const SplitSpec& spec,
                           std::uint64_t seed) {
  const std::size_t n = manifest.segments.size();
  if (spec.n_dev + spec.n_test >= n)
    throw InputError("corpus of " + std::to_string(n) + " segments is too small for " +
                     std::to_string(spec.n_dev) + " dev + " + std::to_string(spec.n_test) +
                     " test segments");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> test, dev, train;
  if (spec.strategy == SplitStrategy::kTail) {
    test.assign(order.end() - static_cast<std::ptrdiff_t>(spec.n_test), order.end());
    dev.assign(order.end() - static_cast<std::ptrdiff_t>(spec.n_test + spec.n_dev),
               order.end() - static_cast<std::ptrdiff_t>(spec.n_test));
    train.assign(order.begin(), order.end() - static_cast<std::ptrdiff_t>(spec.n_test + spec.n_dev));
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[uniform_below(rng, i + 1)]);
    test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(spec.n_test));
    dev.assign(order.begin() + static_cast<std::ptrdiff_t>(spec.n_test),
               order.begin() + static_cast<std::ptrdiff_t>(spec.n_test + spec.n_dev));
    train.assign(order.begin() + static_cast<std::ptrdiff_t>(spec.n_test + spec.n_dev), order.end());
  }
  return {subset(manifest, train), subset(manifest, dev), subset(manifest, test)};
}

}  // namespace corpusforge::pipeline
