// src/nv_matching.cc

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

#include "nvaug/nv_matching.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nvaug/emotion_geometry.h"
#include "nvaug/errors.h"

namespace nvaug {

std::vector<ScoredCandidate> ScoreCandidates(
    const Utterance &utterance, std::span<const NVCandidate *const> pool) {
  if (pool.empty()) throw Error(ErrorKind::kEmptyInput, "empty NV pool");
  std::vector<ScoredCandidate> out;
  out.reserve(pool.size());
  for (const NVCandidate *nv : pool) {
    try {
      out.push_back({nv->id, CosineSimilarity(utterance.embedding,
                                              nv->embedding)});
    } catch (const Error &e) {
      throw Error(e.kind(), "candidate '" + nv->id + "': " + e.detail());
    }
  }
  return out;
}

std::vector<std::size_t> TopKIndices(std::span<const double> scores, int k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep =
      std::min(order.size(), static_cast<std::size_t>(std::max(k, 0)));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  order.resize(keep);
  return order;
}

SelectionDistribution TopKSoftmax(std::span<const double> scores, int k,
                                  double tau) {
  if (k < 1) throw Error(ErrorKind::kInvalidK, "k must be >= 1");
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw Error(ErrorKind::kInvalidTemperature, "temperature must be > 0");
  if (scores.empty()) throw Error(ErrorKind::kEmptyInput, "no scores");

  SelectionDistribution dist;
  dist.temperature = tau;
  dist.k = k;
  const std::vector<std::size_t> top = TopKIndices(scores, k);
  const double best = scores[top.front()];
  double total = 0.0;
  for (std::size_t i : top) {
    const double w = std::exp((scores[i] - best) / tau);
    dist.entries.push_back({i, w});
    total += w;
  }
  for (auto &e : dist.entries) e.probability /= total;
  return dist;
}

SelectionDistribution TopKSoftmax(std::span<const ScoredCandidate> scores,
                                  int k, double tau) {
  std::vector<double> raw;
  raw.reserve(scores.size());
  for (const ScoredCandidate &s : scores) raw.push_back(s.score);
  return TopKSoftmax(raw, k, tau);
}

std::size_t SampleEntry(const SelectionDistribution &dist, Rng &rng) {
  if (dist.entries.empty())
    throw Error(ErrorKind::kEmptyInput, "sampling from an empty distribution");
  double total = 0.0;
  for (const auto &e : dist.entries) total += e.probability;
  const double u = rng.Uniform01() * total;
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < dist.entries.size(); ++i) {
    const double p = dist.entries[i].probability;
    if (p <= 0.0) continue;
    cum += p;
    last_positive = i;
    if (u < cum) return i;
  }
  return last_positive;
}

SelectionDistribution WithoutEntry(const SelectionDistribution &dist,
                                   std::size_t pos) {
  SelectionDistribution out = dist;
  out.entries.erase(out.entries.begin() + static_cast<std::ptrdiff_t>(pos));
  double total = 0.0;
  for (const auto &e : out.entries) total += e.probability;
  if (total > 0.0)
    for (auto &e : out.entries) e.probability /= total;
  return out;
}

int SampleNVCount(NVCountDist law, Rng &rng) {
  switch (law) {
    case NVCountDist::kAlways1: return 1;
    case NVCountDist::kAlways2: return 2;
    case NVCountDist::kUniform12: break;
  }
  return static_cast<int>(rng.UniformInt(1, 2));
}

std::vector<std::size_t> SampleNVs(const SelectionDistribution &dist,
                                   NVCountDist law, Rng &rng) {
  const auto support = static_cast<int>(std::count_if(
      dist.entries.begin(), dist.entries.end(),
      [](const auto &e) { return e.probability > 0.0; }));
  const int n = std::min(SampleNVCount(law, rng), support);

  std::vector<std::size_t> drawn;
  SelectionDistribution remaining = dist;
  for (int i = 0; i < n; ++i) {
    const std::size_t pos = SampleEntry(remaining, rng);
    drawn.push_back(remaining.entries[pos].index);
    remaining = WithoutEntry(remaining, pos);
  }
  return drawn;
}

}  // namespace nvaug
