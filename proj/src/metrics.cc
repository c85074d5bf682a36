// src/metrics.cc

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

#include "nvaug/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <unordered_map>

#include "nvaug/emotion_geometry.h"
#include "nvaug/errors.h"

namespace nvaug {

double AccAtK(std::span<const PredictionRecord> records, int k) {
  if (k < 1) throw Error(ErrorKind::kInvalidK, "k must be >= 1");
  if (records.empty()) throw Error(ErrorKind::kEmptyInput, "no prediction records");
  std::size_t hits = 0;
  for (const PredictionRecord &r : records) {
    const auto end = r.ranked_predictions.begin() +
                     std::min<std::ptrdiff_t>(k, static_cast<std::ptrdiff_t>(
                                                     r.ranked_predictions.size()));
    if (std::find(r.ranked_predictions.begin(), end, r.ground_truth) != end) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

namespace {

// Aligned probability pairs over the union of labels.
std::vector<std::pair<double, double>> Align(const CategoricalDistribution &p,
                                             const CategoricalDistribution &q) {
  std::map<std::string, std::pair<double, double>> cells;
  auto add = [&](const CategoricalDistribution &d, bool first) {
    if (d.labels.size() != d.probs.size())
      throw Error(ErrorKind::kLabelMismatch, "labels and probabilities differ in length");
    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < d.labels.size(); ++i) {
      if (seen[d.labels[i]]++)
        throw Error(ErrorKind::kLabelMismatch, "duplicate label '" + d.labels[i] + "'");
      auto &cell = cells[d.labels[i]];
      (first ? cell.first : cell.second) = d.probs[i];
    }
  };
  add(p, true);
  add(q, false);
  std::vector<std::pair<double, double>> out;
  out.reserve(cells.size());
  for (const auto &[label, cell] : cells) out.push_back(cell);
  return out;
}

}  // namespace

double JensenShannon(const CategoricalDistribution &p,
                     const CategoricalDistribution &q, LogBase base) {
  double js = 0.0;
  for (const auto &[pi, qi] : Align(p, q)) {
    const double m = 0.5 * (pi + qi);
    const double a = pi > 0.0 ? pi * std::log2(pi / m) : 0.0;
    const double b = qi > 0.0 ? qi * std::log2(qi / m) : 0.0;
    js += 0.5 * (a + b);  // a + b keeps the result exactly symmetric
  }
  return base == LogBase::kTwo ? js : js * std::numbers::ln2;
}

double Hellinger(const CategoricalDistribution &p,
                 const CategoricalDistribution &q) {
  double sum = 0.0;
  for (const auto &[pi, qi] : Align(p, q)) {
    const double d = std::sqrt(pi) - std::sqrt(qi);
    sum += d * d;
  }
  return std::sqrt(sum / 2.0);
}

CategoricalDistribution TypeDistribution(std::span<const std::string> labels,
                                         std::span<const std::string> vocab) {
  if (labels.empty()) throw Error(ErrorKind::kEmptyInput, "no events");
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < vocab.size(); ++i) slot.emplace(vocab[i], i);
  std::vector<std::size_t> counts(vocab.size(), 0);
  for (const std::string &l : labels) {
    auto it = slot.find(l);
    if (it == slot.end()) throw Error(ErrorKind::kUnknownLabel, l);
    ++counts[it->second];
  }
  CategoricalDistribution d;
  d.labels.assign(vocab.begin(), vocab.end());
  for (std::size_t c : counts)
    d.probs.push_back(static_cast<double>(c) / static_cast<double>(labels.size()));
  return d;
}

int LocationBin(const LocationEvent &e, int bins) {
  if (e.num_segments < 1 || e.location < 1 || e.location > e.num_segments + 1)
    throw Error(ErrorKind::kOutOfRangeLocation,
                "location " + std::to_string(e.location) + " with " +
                    std::to_string(e.num_segments) + " segments");
  // floor(rho * bins) with rho = (location - 1) / I, in exact integer form.
  const long long bin = static_cast<long long>(e.location - 1) * bins / e.num_segments;
  return static_cast<int>(std::min<long long>(bin, bins - 1));
}

std::string LocationBinLabel(int bin, int bins) {
  const int width = static_cast<int>(std::to_string(bins).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "bin%0*d", width, bin + 1);
  return buf;
}

CategoricalDistribution LocationDistribution(std::span<const LocationEvent> events,
                                             int bins) {
  if (bins < 1) throw Error(ErrorKind::kConfig, "bins must be >= 1");
  if (events.empty()) throw Error(ErrorKind::kEmptyInput, "no location events");
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (const LocationEvent &e : events) ++counts[LocationBin(e, bins)];
  CategoricalDistribution d;
  for (int b = 0; b < bins; ++b) {
    d.labels.push_back(LocationBinLabel(b, bins));
    d.probs.push_back(static_cast<double>(counts[b]) /
                      static_cast<double>(events.size()));
  }
  return d;
}

std::vector<CategoricalDistribution> CrossTabulate(
    std::span<const std::pair<std::string, std::string>> pairs,
    std::span<const std::string> rows, std::span<const std::string> cols) {
  std::unordered_map<std::string, std::size_t> row_slot, col_slot;
  for (std::size_t i = 0; i < rows.size(); ++i) row_slot.emplace(rows[i], i);
  for (std::size_t j = 0; j < cols.size(); ++j) col_slot.emplace(cols[j], j);
  std::vector<std::vector<double>> counts(rows.size(),
                                          std::vector<double>(cols.size(), 0.0));
  for (const auto &[r, c] : pairs) {
    auto ri = row_slot.find(r);
    auto ci = col_slot.find(c);
    if (ri == row_slot.end()) throw Error(ErrorKind::kUnknownLabel, r);
    if (ci == col_slot.end()) throw Error(ErrorKind::kUnknownLabel, c);
    counts[ri->second][ci->second] += 1.0;
  }
  std::vector<CategoricalDistribution> table;
  for (auto &row : counts) {
    double total = 0.0;
    for (double x : row) total += x;
    if (total > 0.0)
      for (double &x : row) x /= total;
    table.push_back({std::vector<std::string>(cols.begin(), cols.end()), row});
  }
  return table;
}

double NVSim(std::span<const double> generated, std::span<const double> reference) {
  return CosineSimilarity(generated, reference);
}

double MeanNVSim(
    std::span<const std::pair<std::vector<double>, std::vector<double>>> pairs) {
  if (pairs.empty()) throw Error(ErrorKind::kEmptyInput, "no embedding pairs");
  double sum = 0.0;
  for (const auto &[gen, ref] : pairs) sum += NVSim(gen, ref);
  return sum / static_cast<double>(pairs.size());
}

}  // namespace nvaug
