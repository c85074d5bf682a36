// include/nvaug/pipeline.h

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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nvaug/corpus.h"
#include "nvaug/metrics.h"
#include "nvaug/nv_matching.h"
#include "nvaug/nv_routing.h"
#include "nvaug/token_rearrange.h"

namespace nvaug {

enum class Strategy { kAffectron, kRuleRandom };

struct RunConfig {
  std::uint64_t seed = 0;
  int k_match = kDefaultMatchK;
  int k_route = kDefaultRouteK;
  double tau = kDefaultTemperature;
  MixingMode mixing = MixingMode::kSameSpeaker;
  Strategy strategy = Strategy::kAffectron;
  std::size_t mask_max_len = 600;
  NVCountDist nv_count_dist = NVCountDist::kUniform12;
  LogBase jsd_base = LogBase::kTwo;
  int bins = 10;
  int workers = 1;
  int max_gap = 10;
  bool include_nv = true;

  // Throws InvalidK, InvalidTemperature or ConfigError.
  void Validate() const;
};

struct Provenance {
  std::uint64_t seed = 0;
  std::uint64_t stream_key = 0;  // per-utterance stream derived from seed + id
  Strategy strategy = Strategy::kAffectron;
  std::vector<std::string> nv_ids;  // in location order
  std::vector<int> locations;
};

struct AugmentedSample {
  std::string utterance_id;
  std::string transcript;
  TokenStreams tokens;  // masked, relocated and delay-stacked
  MaskPlan plan;
  std::vector<SpanEntry> span_map;  // layout before masking
  Provenance provenance;
};

// NV selection and placement for one utterance, before any token surgery.
std::vector<PlannedInsertion> PlanInsertions(const Corpus &corpus,
                                             const Utterance &utterance,
                                             const RunConfig &config, Rng &rng);

// Full augmentation of one utterance. Depends only on (corpus, utterance,
// config), never on other utterances or on scheduling.
AugmentedSample AugmentUtterance(const Corpus &corpus, const Utterance &utterance,
                                 const RunConfig &config);

struct AugmentResult {
  std::string utterance_id;
  std::optional<AugmentedSample> sample;
  std::string error;  // set when the utterance was skipped
};

// Serial reference driver.
std::vector<AugmentResult> AugmentCorpusSerial(const Corpus &corpus,
                                               const RunConfig &config);

// OpenMP driver with config.workers threads. Results are in corpus order.
std::vector<AugmentResult> AugmentCorpus(const Corpus &corpus,
                                         const RunConfig &config);

std::string SerializeSample(const AugmentedSample &sample);
AugmentedSample ParseSample(const std::string &line, const TokenStreams &layout);

// Writes one JSON line per sample, the summary CSV, and one log line per
// skipped utterance.
void WriteAugmentOutputs(const std::vector<AugmentResult> &results,
                         std::ostream &samples, std::ostream &summary,
                         std::ostream &log);

std::string StrategyName(Strategy s);

}  // namespace nvaug
