// include/nvaug/metrics.h

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
#include <utility>
#include <vector>

namespace nvaug {

struct CategoricalDistribution {
  std::vector<std::string> labels;
  std::vector<double> probs;
};

struct PredictionRecord {
  std::string item_id;
  std::vector<std::string> ranked_predictions;  // best first
  std::string ground_truth;
};

enum class LogBase { kTwo, kE };

// Fraction of records whose ground truth is among the first k predictions.
// Throws EmptyInput, InvalidK.
double AccAtK(std::span<const PredictionRecord> records, int k);

// Jensen-Shannon divergence with 0 log 0 = 0. Distributions are aligned by
// label; a label missing on one side has probability zero there.
// Throws LabelMismatch on duplicate labels.
double JensenShannon(const CategoricalDistribution &p,
                     const CategoricalDistribution &q,
                     LogBase base = LogBase::kTwo);

// (1 / sqrt 2) * || sqrt(p) - sqrt(q) ||_2.
double Hellinger(const CategoricalDistribution &p,
                 const CategoricalDistribution &q);

// Empirical frequencies of `labels` over `vocab`, zero counts kept.
// Throws EmptyInput, UnknownLabel.
CategoricalDistribution TypeDistribution(std::span<const std::string> labels,
                                         std::span<const std::string> vocab);

struct LocationEvent {
  int location = 1;      // 1..num_segments + 1
  int num_segments = 1;  // I
};

// Bins the normalized position (location - 1) / I into `bins` equal-width
// bins over [0, 1], last bin closed on the right.
// Throws EmptyInput, OutOfRangeLocation.
CategoricalDistribution LocationDistribution(std::span<const LocationEvent> events,
                                             int bins = 10);
int LocationBin(const LocationEvent &event, int bins);
std::string LocationBinLabel(int bin, int bins);  // 0-based bin

// Row-normalized contingency table: one distribution over `cols` per entry of
// `rows`. Rows without events are all zero.
std::vector<CategoricalDistribution> CrossTabulate(
    std::span<const std::pair<std::string, std::string>> pairs,
    std::span<const std::string> rows, std::span<const std::string> cols);

double NVSim(std::span<const double> generated, std::span<const double> reference);

// Mean NV-Sim over pairs, reduced in input order.
double MeanNVSim(std::span<const std::pair<std::vector<double>, std::vector<double>>> pairs);

}  // namespace nvaug
