// src/dynamics.cc

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

#include "nvaug/dynamics.h"

#include <omp.h>

#include <algorithm>

#include "nvaug/errors.h"

namespace nvaug {

std::string_view MetricName(DistanceMetric metric) {
  switch (metric) {
    case DistanceMetric::kAngular: return "angular";
    case DistanceMetric::kCartesian: return "cartesian";
    case DistanceMetric::kRadial: return "radial";
  }
  return "unknown";
}

namespace {

struct Point {
  EmotionAttr centered;
  SphericalEmotion spherical;
};

std::vector<Point> Points(const Utterance &u, const EmotionAttr &center,
                          bool include_nv) {
  std::vector<Point> pts;
  pts.reserve(u.segments.size());
  for (const WordSegment &s : u.segments) {
    if (s.is_nv && !include_nv) continue;
    const EmotionAttr c = Center(s.attrs, center);
    pts.push_back({c, ToSpherical(c)});
  }
  return pts;
}

double PointDistance(DistanceMetric metric, const Point &a, const Point &b) {
  switch (metric) {
    case DistanceMetric::kAngular: return AngularDistance(a.spherical, b.spherical);
    case DistanceMetric::kCartesian: return CartesianDistance(a.centered, b.centered);
    case DistanceMetric::kRadial: return RadialDifference(a.spherical, b.spherical);
  }
  return 0.0;
}

void Finish(GapProfile &profile, const std::vector<double> &sums) {
  std::size_t pairs = 0;
  for (std::size_t g = 0; g < sums.size(); ++g) {
    pairs += profile.pair_count[g];
    profile.mean_distance[g] =
        profile.pair_count[g] ? sums[g] / static_cast<double>(profile.pair_count[g])
                              : 0.0;
  }
  if (pairs == 0) throw Error(ErrorKind::kNoPairs, "no utterance has two segments");
}

void CheckOptions(const GapOptions &options) {
  if (options.max_gap < 1) throw Error(ErrorKind::kConfig, "max_gap must be >= 1");
}

}  // namespace

double SegmentDistance(DistanceMetric metric, const EmotionAttr &a,
                       const EmotionAttr &b, const EmotionAttr &center) {
  const EmotionAttr ca = Center(a, center), cb = Center(b, center);
  return PointDistance(metric, {ca, ToSpherical(ca)}, {cb, ToSpherical(cb)});
}

GapProfile GapProfileSerial(const Corpus &corpus, DistanceMetric metric,
                            const EmotionAttr &center, const GapOptions &options) {
  CheckOptions(options);
  const auto max_gap = static_cast<std::size_t>(options.max_gap);
  GapProfile profile{metric, std::vector<double>(max_gap, 0.0),
                     std::vector<std::size_t>(max_gap, 0)};
  std::vector<double> sums(max_gap, 0.0), row(max_gap);
  for (const Utterance &u : corpus.utterances) {
    const std::vector<Point> pts = Points(u, center, options.include_nv);
    // per-utterance sums first, same association as the parallel kernel
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t g = 1; g <= max_gap && i + g < pts.size(); ++g) {
        row[g - 1] += PointDistance(metric, pts[i], pts[i + g]);
        ++profile.pair_count[g - 1];
      }
    }
    for (std::size_t g = 0; g < max_gap; ++g) sums[g] += row[g];
  }
  Finish(profile, sums);
  return profile;
}

GapProfile ComputeGapProfile(const Corpus &corpus, DistanceMetric metric,
                             const EmotionAttr &center, const GapOptions &options,
                             int workers) {
  CheckOptions(options);
  const auto max_gap = static_cast<std::size_t>(options.max_gap);
  const auto n = static_cast<std::ptrdiff_t>(corpus.utterances.size());
  // Row u holds utterance u's per-gap sums.
  std::vector<double> partial(static_cast<std::size_t>(n) * max_gap, 0.0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(n) * max_gap, 0);
  const int threads = workers > 0 ? workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (std::ptrdiff_t u = 0; u < n; ++u) {
    const std::vector<Point> pts =
        Points(corpus.utterances[static_cast<std::size_t>(u)], center,
               options.include_nv);
    double *row = partial.data() + static_cast<std::size_t>(u) * max_gap;
    std::size_t *crow = counts.data() + static_cast<std::size_t>(u) * max_gap;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t g = 1; g <= max_gap && i + g < pts.size(); ++g) {
        row[g - 1] += PointDistance(metric, pts[i], pts[i + g]);
        ++crow[g - 1];
      }
    }
  }

  GapProfile profile{metric, std::vector<double>(max_gap, 0.0),
                     std::vector<std::size_t>(max_gap, 0)};
  std::vector<double> sums(max_gap, 0.0);
  for (std::ptrdiff_t u = 0; u < n; ++u) {
    for (std::size_t g = 0; g < max_gap; ++g) {
      sums[g] += partial[static_cast<std::size_t>(u) * max_gap + g];
      profile.pair_count[g] += counts[static_cast<std::size_t>(u) * max_gap + g];
    }
  }
  Finish(profile, sums);
  return profile;
}

}  // namespace nvaug
