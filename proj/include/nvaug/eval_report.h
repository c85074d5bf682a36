// include/nvaug/eval_report.h

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

#include <iosfwd>
#include <string>
#include <vector>

#include "nvaug/metrics.h"

namespace nvaug {

// Prediction line: {"item_id", "track": "type"|"location", "ranked": [...],
// "gt"?, "num_segments"?}. Location labels may be numbers or numeric strings.
struct TrackPrediction {
  std::string track;
  PredictionRecord record;
  int num_segments = 0;  // 0 if absent
};

// Reference line: {"item_id", "track", "label", "num_segments"?}.
struct ReferenceEvent {
  std::string item_id;
  std::string track;
  std::string label;
  int num_segments = 0;
};

// Throw ParseError with the offending line number.
std::vector<TrackPrediction> ParsePredictions(std::istream &in);
std::vector<ReferenceEvent> ParseReferences(std::istream &in);

struct MetricRow {
  std::string metric;
  int k = 0;  // 0: not a top-K metric
  double value = 0.0;
};

struct DistributionRow {
  std::string label;  // "<track>:<label>"
  double p = 0.0;     // reference
  double q = 0.0;     // top-1 predictions
};

struct EvalReport {
  std::vector<MetricRow> metrics;
  std::vector<DistributionRow> distributions;
};

inline constexpr int kReportedK[] = {1, 3, 5};

// Acc@1/3/5, JSD and HD for the location and type tracks, in that order.
EvalReport Evaluate(const std::vector<TrackPrediction> &predictions,
                    const std::vector<ReferenceEvent> &references,
                    LogBase jsd_base = LogBase::kTwo, int bins = 10);

void WriteMetricsCsv(const std::vector<MetricRow> &rows, std::ostream &out);
void WriteDistributionsCsv(const std::vector<DistributionRow> &rows,
                           std::ostream &out);

std::string FormatValue(double v);

}  // namespace nvaug
