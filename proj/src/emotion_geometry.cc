// src/emotion_geometry.cc

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

#include "nvaug/emotion_geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nvaug/errors.h"

namespace nvaug {

bool EmotionAttr::IsFinite() const {
  return std::isfinite(arousal) && std::isfinite(valence) &&
         std::isfinite(dominance);
}

EmotionAttr ComputeNeutralCenter(std::span<const EmotionAttr> points) {
  if (points.empty())
    throw Error(ErrorKind::kEmptyInput, "no points to average");
  double a = 0.0, v = 0.0, d = 0.0;
  for (const EmotionAttr &p : points) {
    a += p.arousal;
    v += p.valence;
    d += p.dominance;
  }
  const double n = static_cast<double>(points.size());
  return {a / n, v / n, d / n};
}

EmotionAttr Center(const EmotionAttr &e, const EmotionAttr &m) {
  return {e.arousal - m.arousal, e.valence - m.valence,
          e.dominance - m.dominance};
}

SphericalEmotion ToSpherical(const EmotionAttr &e) {
  const double r = std::sqrt(e.arousal * e.arousal + e.valence * e.valence +
                             e.dominance * e.dominance);
  if (!(r >= kDegenerateRadius)) return {};
  const double theta = std::acos(std::clamp(e.dominance / r, -1.0, 1.0));
  double phi = std::atan2(e.valence, e.arousal);
  // atan2 yields -pi for (-0.0, negative); fold onto the half-open range.
  if (phi <= -std::numbers::pi) phi = std::numbers::pi;
  return {r, theta, phi};
}

EmotionAttr FromSpherical(const SphericalEmotion &s) {
  const double st = std::sin(s.theta);
  return {s.r * st * std::cos(s.phi), s.r * st * std::sin(s.phi),
          s.r * std::cos(s.theta)};
}

double AngularDistance(const SphericalEmotion &p, const SphericalEmotion &q) {
  // acos(sin t1 sin t2 + cos t1 cos t2 cos dp), rewritten as
  // 2 asin(sqrt((1 - c) / 2)) so that p == q gives exactly 0.
  const double st = std::sin(0.5 * (p.theta - q.theta));
  const double sp = std::sin(0.5 * (p.phi - q.phi));
  const double h = st * st + std::cos(p.theta) * std::cos(q.theta) * sp * sp;
  return 2.0 * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

double CartesianDistance(const EmotionAttr &p, const EmotionAttr &q) {
  const double da = p.arousal - q.arousal;
  const double dv = p.valence - q.valence;
  const double dd = p.dominance - q.dominance;
  return std::sqrt(da * da + dv * dv + dd * dd);
}

double RadialDifference(const SphericalEmotion &p, const SphericalEmotion &q) {
  return std::abs(p.r - q.r);
}

double CosineSimilarity(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw Error(ErrorKind::kDimensionMismatch,
                std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  double dot = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (!(uu > 0.0) || !(vv > 0.0))
    throw Error(ErrorKind::kZeroNorm, "cosine similarity of a zero vector");
  return std::clamp(dot / (std::sqrt(uu) * std::sqrt(vv)), -1.0, 1.0);
}

}  // namespace nvaug
