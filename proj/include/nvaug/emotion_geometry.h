// include/nvaug/emotion_geometry.h

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
#include <vector>

namespace nvaug {

/// Arousal / valence / dominance pseudo-label. Also used for the neutral
/// center and for centered points.
struct EmotionAttr {
  double arousal = 0.0;
  double valence = 0.0;
  double dominance = 0.0;

  bool IsFinite() const;
  friend bool operator==(const EmotionAttr &, const EmotionAttr &) = default;
};

/// Spherical image of a centered attribute triple. theta is measured from the
/// dominance axis, phi is the azimuth in the arousal/valence plane.
struct SphericalEmotion {
  double r = 0.0;      // >= 0
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // (-pi, pi]
};

// Radii below this map to the degenerate point (0, 0, 0).
inline constexpr double kDegenerateRadius = 1e-9;

// Componentwise mean. Throws EmptyInput on an empty list.
EmotionAttr ComputeNeutralCenter(std::span<const EmotionAttr> points);

EmotionAttr Center(const EmotionAttr &e, const EmotionAttr &m);

SphericalEmotion ToSpherical(const EmotionAttr &e);

// Inverse of ToSpherical: A = r sin(theta) cos(phi), V = r sin(theta) sin(phi),
// D = r cos(theta).
EmotionAttr FromSpherical(const SphericalEmotion &s);

/// Angular distance between two spherical points in radians, using the
/// elevation/azimuth form
///   acos(sin t1 sin t2 + cos t1 cos t2 cos(p1 - p2))
/// with the acos argument clamped to [-1, 1]. The radius is ignored.
double AngularDistance(const SphericalEmotion &p, const SphericalEmotion &q);

double CartesianDistance(const EmotionAttr &p, const EmotionAttr &q);

double RadialDifference(const SphericalEmotion &p, const SphericalEmotion &q);

// Throws DimensionMismatch or ZeroNorm. Result is clamped to [-1, 1].
double CosineSimilarity(std::span<const double> u, std::span<const double> v);

}  // namespace nvaug
