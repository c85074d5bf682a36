// src/nv_routing.cc

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

#include "nvaug/nv_routing.h"

#include <algorithm>

#include "nvaug/emotion_geometry.h"
#include "nvaug/errors.h"

namespace nvaug {

std::vector<double> LocationDistances(
    std::span<const double> segment_distances) {
  const std::size_t n = segment_distances.size();
  if (n == 0) throw Error(ErrorKind::kEmptySegments, "no word segments");
  std::vector<double> d(n + 1);
  d[0] = segment_distances[0];
  d[n] = segment_distances[n - 1];
  for (std::size_t t = 1; t < n; ++t)
    d[t] = (segment_distances[t - 1] + segment_distances[t]) / 2.0;
  return d;
}

InsertionProfile InsertionDistances(const NVCandidate &nv,
                                    std::span<const WordSegment> segments,
                                    const EmotionAttr &center) {
  if (segments.empty())
    throw Error(ErrorKind::kEmptySegments, "no word segments");
  const SphericalEmotion nv_point = ToSpherical(Center(nv.attrs, center));
  std::vector<double> per_segment;
  per_segment.reserve(segments.size());
  for (const WordSegment &s : segments)
    per_segment.push_back(
        AngularDistance(nv_point, ToSpherical(Center(s.attrs, center))));

  InsertionProfile profile;
  profile.nv_id = nv.id;
  profile.distances = LocationDistances(per_segment);
  return profile;
}

InsertionProfile InsertionDistances(const NVCandidate &nv,
                                    const Utterance &utterance,
                                    const EmotionAttr &center) {
  InsertionProfile p = InsertionDistances(nv, utterance.segments, center);
  p.utterance_id = utterance.id;
  return p;
}

SelectionDistribution RoutingDistribution(const InsertionProfile &profile,
                                          int k, double tau) {
  std::vector<double> negated(profile.distances.size());
  std::transform(profile.distances.begin(), profile.distances.end(),
                 negated.begin(), [](double d) { return -d; });
  return TopKSoftmax(negated, k, tau);
}

RoutedInsertion Route(const InsertionProfile &profile, int k, double tau,
                      Rng &rng) {
  RoutedInsertion out;
  out.nv_id = profile.nv_id;
  out.distribution = RoutingDistribution(profile, k, tau);
  const auto &entry = out.distribution.entries[SampleEntry(out.distribution, rng)];
  out.location = static_cast<int>(entry.index) + 1;
  out.probability = entry.probability;
  return out;
}

std::vector<RoutedInsertion> AssignLocations(
    std::vector<RoutedInsertion> insertions, Rng &rng) {
  std::vector<RoutedInsertion> placed;
  for (RoutedInsertion &ins : insertions) {
    auto taken = [&](int loc) {
      return std::any_of(placed.begin(), placed.end(),
                         [&](const RoutedInsertion &p) { return p.location == loc; });
    };
    if (taken(ins.location)) {
      SelectionDistribution &dist = ins.distribution;
      for (std::size_t i = dist.entries.size(); i-- > 0;)
        if (taken(static_cast<int>(dist.entries[i].index) + 1))
          dist = WithoutEntry(dist, i);
      const bool exhausted = std::none_of(
          dist.entries.begin(), dist.entries.end(),
          [](const auto &e) { return e.probability > 0.0; });
      if (exhausted) continue;
      const auto &entry = dist.entries[SampleEntry(dist, rng)];
      ins.location = static_cast<int>(entry.index) + 1;
      ins.probability = entry.probability;
    }
    placed.push_back(std::move(ins));
  }
  std::stable_sort(placed.begin(), placed.end(),
                   [](const RoutedInsertion &a, const RoutedInsertion &b) {
                     return a.location < b.location;
                   });
  return placed;
}

}  // namespace nvaug
