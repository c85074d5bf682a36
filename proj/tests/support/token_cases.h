// tests/support/token_cases.h

// Copyright 2026  The nvaug Authors

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

// Random token streams and splice plans for the rearrangement tests.

#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "nvaug/token_rearrange.h"

namespace nvaug::testing {

constexpr int kVocab = 100;

inline TokenStreams Streams(std::vector<std::vector<Token>> s, double fr = 1.0) {
  TokenStreams t;
  t.num_codebooks = static_cast<int>(s.size());
  t.vocab_size = kVocab;
  t.frame_rate = fr;
  t.streams = std::move(s);
  return t;
}

inline TokenStreams RandomStreams(std::mt19937_64 &gen, int k, std::size_t frames) {
  std::uniform_int_distribution<Token> tok(0, kVocab - 1);
  std::vector<std::vector<Token>> s(static_cast<std::size_t>(k), std::vector<Token>(frames));
  for (auto &x : s)
    for (auto &t : x) t = tok(gen);
  return Streams(std::move(s));
}

// Random utterance with word times on a frame grid, plus sorted insertions.
struct Case {
  Utterance utt;
  std::vector<NVCandidate> clips;
  std::vector<PlannedInsertion> plan;
};

inline Case RandomCase(std::mt19937_64 &gen) {
  Case c;
  const int k = std::uniform_int_distribution<int>(1, 4)(gen);
  const int words = std::uniform_int_distribution<int>(1, 10)(gen);
  std::uniform_int_distribution<int> wlen(1, 6), gap(0, 2);
  c.utt.id = "u";
  int t = gap(gen);
  for (int i = 0; i < words; ++i) {
    WordSegment w;
    w.index = i + 1;
    w.text = "w" + std::to_string(i + 1);
    w.start_time = t;
    t += wlen(gen);
    w.end_time = t;
    t += gap(gen);
    c.utt.segments.push_back(w);
  }
  c.utt.tokens = RandomStreams(gen, k, static_cast<std::size_t>(t + gap(gen)));
  const int n = std::uniform_int_distribution<int>(1, 2)(gen);
  std::vector<int> locs;
  while (static_cast<int>(locs.size()) < std::min(n, words + 1)) {
    const int l = std::uniform_int_distribution<int>(1, words + 1)(gen);
    if (std::find(locs.begin(), locs.end(), l) == locs.end()) locs.push_back(l);
  }
  std::sort(locs.begin(), locs.end());
  c.clips.reserve(locs.size());
  for (std::size_t i = 0; i < locs.size(); ++i) {
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 8)(gen);
    NVCandidate nv;
    nv.id = "nv" + std::to_string(i);
    nv.nv_type = "Sigh";
    nv.tokens = RandomStreams(gen, k, len);
    c.clips.push_back(nv);
  }
  for (std::size_t i = 0; i < locs.size(); ++i) c.plan.push_back({&c.clips[i], locs[i]});
  return c;
}

}  // namespace nvaug::testing
