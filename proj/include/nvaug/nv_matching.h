// include/nvaug/nv_matching.h

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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nvaug/corpus.h"
#include "nvaug/rng.h"

namespace nvaug {

inline constexpr int kDefaultMatchK = 10;
inline constexpr double kDefaultTemperature = 0.7;

struct ScoredCandidate {
  std::string candidate_id;
  double score = 0.0;  // cosine similarity in [-1, 1]
};

/// Temperature-scaled softmax restricted to the top-K entries of a score list.
/// `index` refers back to the position in the scored input, so the same type
/// serves candidates and insertion locations.
struct SelectionDistribution {
  struct Entry {
    std::size_t index = 0;
    double probability = 0.0;
  };
  std::vector<Entry> entries;  // in descending score order
  double temperature = kDefaultTemperature;
  int k = 1;
};

std::vector<ScoredCandidate> ScoreCandidates(
    const Utterance &utterance, std::span<const NVCandidate *const> pool);

// Generic form over raw scores (higher is better). Ties keep input order.
// Throws InvalidK, InvalidTemperature, EmptyInput.
SelectionDistribution TopKSoftmax(std::span<const double> scores, int k,
                                  double tau);
SelectionDistribution TopKSoftmax(std::span<const ScoredCandidate> scores,
                                  int k, double tau);

// Input positions of the min(k, n) largest scores, best first; ties keep
// input order.
std::vector<std::size_t> TopKIndices(std::span<const double> scores, int k);

// Draws one entry, returning its position in dist.entries.
std::size_t SampleEntry(const SelectionDistribution &dist, Rng &rng);

// Removes entry `pos` and renormalizes the remainder.
SelectionDistribution WithoutEntry(const SelectionDistribution &dist,
                                   std::size_t pos);

enum class NVCountDist { kUniform12, kAlways1, kAlways2 };

// Draws the number of NVs to insert (before clamping to the pool).
int SampleNVCount(NVCountDist law, Rng &rng);

// Samples 1 or 2 entries without replacement. Returns the `index` fields of
// the drawn entries, in draw order.
std::vector<std::size_t> SampleNVs(const SelectionDistribution &dist,
                                   NVCountDist law, Rng &rng);

}  // namespace nvaug
