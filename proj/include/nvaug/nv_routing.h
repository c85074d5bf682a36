// include/nvaug/nv_routing.h

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

#include <span>
#include <string>
#include <vector>

#include "nvaug/corpus.h"
#include "nvaug/nv_matching.h"
#include "nvaug/rng.h"

namespace nvaug {

inline constexpr int kDefaultRouteK = 5;

/// Affective distance from one NV to each of the I+1 insertion locations.
/// distances[t - 1] belongs to location t (insert before word t; t = I+1 is
/// after the last word).
struct InsertionProfile {
  std::string utterance_id;
  std::string nv_id;
  std::vector<double> distances;
};

struct RoutedInsertion {
  std::string nv_id;
  int location = 1;          // 1..I+1
  double probability = 0.0;  // mass of the sampled entry
  SelectionDistribution distribution;  // over location - 1 indices
};

// Location distances from per-segment angular distances: the edge locations
// take their single neighbour, interior ones the mean of both neighbours.
std::vector<double> LocationDistances(std::span<const double> segment_distances);

// Centers the NV and segment attributes on `center`, maps them to spherical
// coordinates and evaluates the angular distance per location.
// Throws EmptySegments.
InsertionProfile InsertionDistances(const NVCandidate &nv,
                                    const Utterance &utterance,
                                    const EmotionAttr &center);
InsertionProfile InsertionDistances(const NVCandidate &nv,
                                    std::span<const WordSegment> segments,
                                    const EmotionAttr &center);

// Softmax over the negated k smallest distances, then one draw.
RoutedInsertion Route(const InsertionProfile &profile, int k, double tau,
                      Rng &rng);

// Location distribution used by Route, without the draw.
SelectionDistribution RoutingDistribution(const InsertionProfile &profile,
                                          int k, double tau);

// Resolves two NVs landing on the same location: the later one is redrawn
// from its own distribution with the taken location removed, and dropped if
// nothing is left. Output is sorted by location.
std::vector<RoutedInsertion> AssignLocations(
    std::vector<RoutedInsertion> insertions, Rng &rng);

}  // namespace nvaug
