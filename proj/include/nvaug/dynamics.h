// include/nvaug/dynamics.h

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
#include <string_view>
#include <vector>

#include "nvaug/corpus.h"
#include "nvaug/emotion_geometry.h"

namespace nvaug {

enum class DistanceMetric { kAngular, kCartesian, kRadial };

std::string_view MetricName(DistanceMetric metric);

/// Mean affective distance between segments i and i + gap of the same
/// utterance, pooled over every pair in the corpus. Index g - 1 holds gap g.
struct GapProfile {
  DistanceMetric metric = DistanceMetric::kAngular;
  std::vector<double> mean_distance;
  std::vector<std::size_t> pair_count;
};

struct GapOptions {
  int max_gap = 10;
  bool include_nv = true;  // keep NV-flagged segments in the sequence
};

// Distance between two raw attribute triples after centering.
double SegmentDistance(DistanceMetric metric, const EmotionAttr &a,
                       const EmotionAttr &b, const EmotionAttr &center);

// Straight nested loop over utterances and pairs; reference for the parallel
// kernel. Throws NoPairs.
GapProfile GapProfileSerial(const Corpus &corpus, DistanceMetric metric,
                            const EmotionAttr &center,
                            const GapOptions &options = {});

// OpenMP over utterances. Per-utterance partial sums are reduced in corpus
// order, so the result does not depend on `workers`.
GapProfile ComputeGapProfile(const Corpus &corpus, DistanceMetric metric,
                             const EmotionAttr &center,
                             const GapOptions &options = {}, int workers = 0);

}  // namespace nvaug
