// src/pipeline.cc

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

#include "nvaug/pipeline.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "nvaug/errors.h"

namespace nvaug {

using nlohmann::json;

namespace {

// Sub-stream tags; each stage draws from its own stream.
constexpr std::uint64_t kMatchStream = 1;
constexpr std::uint64_t kRouteStream = 2;
constexpr std::uint64_t kMaskStream = 3;

const EmotionAttr &RequireCenter(const Corpus &corpus) {
  if (!corpus.neutral_center)
    throw Error(ErrorKind::kSchemaError,
                "neutral_center: manifest is not centered (run `center` first)");
  return *corpus.neutral_center;
}

std::vector<RoutedInsertion> PlanAffectron(const Utterance &u,
                                           const std::vector<const NVCandidate *> &pool,
                                           const EmotionAttr &center,
                                           const RunConfig &config, Rng &match_rng,
                                           Rng &route_rng) {
  const std::vector<ScoredCandidate> scores = ScoreCandidates(u, pool);
  const SelectionDistribution dist = TopKSoftmax(scores, config.k_match, config.tau);
  const std::vector<std::size_t> picked =
      SampleNVs(dist, config.nv_count_dist, match_rng);

  std::vector<RoutedInsertion> routed;
  for (std::size_t idx : picked) {
    const InsertionProfile profile = InsertionDistances(*pool[idx], u, center);
    routed.push_back(Route(profile, config.k_route, config.tau, route_rng));
  }
  return AssignLocations(std::move(routed), route_rng);
}

// Baseline: uniform NV type, uniform clip of that type, uniform location among
// silent gaps.
std::vector<std::pair<const NVCandidate *, int>> PlanRuleRandom(
    const Corpus &corpus, const Utterance &u,
    const std::vector<const NVCandidate *> &pool, const RunConfig &config,
    Rng &match_rng, Rng &route_rng) {
  std::vector<std::string> types;
  for (const std::string &t : corpus.nv_vocabulary)
    if (std::any_of(pool.begin(), pool.end(),
                    [&](const NVCandidate *nv) { return nv->nv_type == t; }))
      types.push_back(t);

  const int n_segments = static_cast<int>(u.segments.size());
  const double duration =
      static_cast<double>(u.tokens.NumFrames()) / u.tokens.frame_rate;
  std::vector<int> gaps;
  for (int loc = 1; loc <= n_segments + 1; ++loc)
    if (IsSilenceGap(u.segments, duration, loc)) gaps.push_back(loc);
  if (gaps.empty()) gaps = {1, n_segments + 1};

  const int count = std::min(SampleNVCount(config.nv_count_dist, match_rng),
                             static_cast<int>(pool.size()));
  std::vector<std::pair<const NVCandidate *, int>> out;
  std::vector<const NVCandidate *> used;
  for (int i = 0; i < count && !gaps.empty(); ++i) {
    std::vector<const NVCandidate *> clips;
    std::vector<std::string> open_types;
    for (const std::string &t : types)
      for (const NVCandidate *nv : pool)
        if (nv->nv_type == t &&
            std::find(used.begin(), used.end(), nv) == used.end()) {
          open_types.push_back(t);
          break;
        }
    if (open_types.empty()) break;
    const std::string &type = open_types[static_cast<std::size_t>(
        match_rng.UniformInt(0, static_cast<std::int64_t>(open_types.size()) - 1))];
    for (const NVCandidate *nv : pool)
      if (nv->nv_type == type && std::find(used.begin(), used.end(), nv) == used.end())
        clips.push_back(nv);
    const NVCandidate *clip = clips[static_cast<std::size_t>(
        match_rng.UniformInt(0, static_cast<std::int64_t>(clips.size()) - 1))];
    used.push_back(clip);

    const auto g = static_cast<std::size_t>(
        route_rng.UniformInt(0, static_cast<std::int64_t>(gaps.size()) - 1));
    out.emplace_back(clip, gaps[g]);
    gaps.erase(gaps.begin() + static_cast<std::ptrdiff_t>(g));
  }
  return out;
}

}  // namespace

void RunConfig::Validate() const {
  if (k_match < 1 || k_route < 1)
    throw Error(ErrorKind::kInvalidK, "top-K values must be >= 1");
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw Error(ErrorKind::kInvalidTemperature, "tau must be > 0");
  if (mask_max_len < 1) throw Error(ErrorKind::kConfig, "mask-max-len must be >= 1");
  if (bins < 1) throw Error(ErrorKind::kConfig, "bins must be >= 1");
  if (workers < 1) throw Error(ErrorKind::kConfig, "workers must be >= 1");
  if (max_gap < 1) throw Error(ErrorKind::kConfig, "max-gap must be >= 1");
}

std::string StrategyName(Strategy s) {
  return s == Strategy::kAffectron ? "affectron" : "rule_random";
}

std::vector<PlannedInsertion> PlanInsertions(const Corpus &corpus,
                                             const Utterance &utterance,
                                             const RunConfig &config, Rng &rng) {
  const std::vector<const NVCandidate *> pool =
      FilterCandidates(corpus, utterance, config.mixing);
  Rng match_rng = rng.Split(kMatchStream);
  Rng route_rng = rng.Split(kRouteStream);

  std::vector<PlannedInsertion> planned;
  if (config.strategy == Strategy::kAffectron) {
    const EmotionAttr &center = RequireCenter(corpus);
    for (const RoutedInsertion &r :
         PlanAffectron(utterance, pool, center, config, match_rng, route_rng)) {
      const auto it = std::find_if(pool.begin(), pool.end(), [&](const NVCandidate *nv) {
        return nv->id == r.nv_id;
      });
      planned.push_back({*it, r.location});
    }
  } else {
    for (const auto &[nv, loc] :
         PlanRuleRandom(corpus, utterance, pool, config, match_rng, route_rng))
      planned.push_back({nv, loc});
    std::sort(planned.begin(), planned.end(),
              [](const PlannedInsertion &a, const PlannedInsertion &b) {
                return a.location < b.location;
              });
  }
  return planned;
}

AugmentedSample AugmentUtterance(const Corpus &corpus, const Utterance &utterance,
                                 const RunConfig &config) {
  Rng rng = Rng::ForItem(config.seed, utterance.id);
  const std::vector<PlannedInsertion> planned =
      PlanInsertions(corpus, utterance, config, rng);

  const SplicedSequence spliced = Splice(utterance, planned);
  Rng mask_rng = rng.Split(kMaskStream);
  MaskPlanConfig mask_config;
  mask_config.max_len = config.mask_max_len;
  const MaskPlan plan = SampleMaskPlan(spliced, mask_rng, mask_config);
  const ControlVocab vocab(corpus.vocab_size);

  AugmentedSample sample;
  sample.utterance_id = utterance.id;
  sample.transcript = spliced.TranscriptText();
  sample.tokens = DelayStack(ApplyMasks(spliced.streams, plan, vocab), vocab);
  sample.plan = plan;
  sample.span_map = spliced.span_map;
  sample.provenance.seed = config.seed;
  sample.provenance.stream_key = rng.key();
  sample.provenance.strategy = config.strategy;
  for (const PlannedInsertion &p : planned) {
    sample.provenance.nv_ids.push_back(p.nv->id);
    sample.provenance.locations.push_back(p.location);
  }
  return sample;
}

namespace {

AugmentResult AugmentOne(const Corpus &corpus, const Utterance &u,
                         const RunConfig &config) {
  AugmentResult r;
  r.utterance_id = u.id;
  try {
    r.sample = AugmentUtterance(corpus, u, config);
  } catch (const Error &e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

std::vector<AugmentResult> AugmentCorpusSerial(const Corpus &corpus,
                                               const RunConfig &config) {
  config.Validate();
  std::vector<AugmentResult> results;
  results.reserve(corpus.utterances.size());
  for (const Utterance &u : corpus.utterances)
    results.push_back(AugmentOne(corpus, u, config));
  return results;
}

std::vector<AugmentResult> AugmentCorpus(const Corpus &corpus,
                                         const RunConfig &config) {
  config.Validate();
  const auto n = static_cast<std::ptrdiff_t>(corpus.utterances.size());
  std::vector<AugmentResult> results(static_cast<std::size_t>(n));

#pragma omp parallel for schedule(dynamic, 4) num_threads(config.workers)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    results[idx] = AugmentOne(corpus, corpus.utterances[idx], config);
  }
  return results;
}

// ---------------------------------------------------------------------------
// Serialization

std::string SerializeSample(const AugmentedSample &s) {
  const ControlVocab vocab(s.tokens.vocab_size);
  json spans = json::array();
  for (const MaskSpan &m : s.plan.spans)
    spans.push_back({{"start", m.start},
                     {"length", m.length},
                     {"mask", m.mask_number},
                     {"mask_id", vocab.MaskId(m.mask_number)}});
  json span_map = json::array();
  for (const SpanEntry &e : s.span_map) {
    json entry = {{"kind", e.kind == SpanEntry::Kind::kNV ? "nv" : "verbal"},
                  {"start", e.start},
                  {"length", e.length}};
    if (e.kind == SpanEntry::Kind::kNV) entry["nv_id"] = e.nv_id;
    span_map.push_back(std::move(entry));
  }
  const json rec = {
      {"id", s.utterance_id},
      {"transcript", s.transcript},
      {"tokens", s.tokens.streams},
      {"plan", {{"spans", spans}, {"covered_nv", s.plan.covered_nv}}},
      {"provenance",
       {{"seed", s.provenance.seed},
        {"stream_key", s.provenance.stream_key},
        {"strategy", StrategyName(s.provenance.strategy)},
        {"nv_ids", s.provenance.nv_ids},
        {"locations", s.provenance.locations},
        {"span_map", span_map}}}};
  return rec.dump();
}

AugmentedSample ParseSample(const std::string &line, const TokenStreams &layout) {
  AugmentedSample s;
  try {
    const json rec = json::parse(line);
    s.utterance_id = rec.at("id").get<std::string>();
    s.transcript = rec.at("transcript").get<std::string>();
    s.tokens.num_codebooks = layout.num_codebooks;
    s.tokens.vocab_size = layout.vocab_size;
    s.tokens.frame_rate = layout.frame_rate;
    s.tokens.streams = rec.at("tokens").get<std::vector<std::vector<Token>>>();
    const json &plan = rec.at("plan");
    s.plan.covered_nv = plan.at("covered_nv").get<std::string>();
    for (const json &m : plan.at("spans"))
      s.plan.spans.push_back({m.at("start").get<std::size_t>(),
                              m.at("length").get<std::size_t>(),
                              m.at("mask").get<int>()});
    const json &prov = rec.at("provenance");
    s.provenance.seed = prov.at("seed").get<std::uint64_t>();
    s.provenance.stream_key = prov.at("stream_key").get<std::uint64_t>();
    s.provenance.strategy = prov.at("strategy").get<std::string>() == "affectron"
                                ? Strategy::kAffectron
                                : Strategy::kRuleRandom;
    s.provenance.nv_ids = prov.at("nv_ids").get<std::vector<std::string>>();
    s.provenance.locations = prov.at("locations").get<std::vector<int>>();
    for (const json &e : prov.at("span_map")) {
      SpanEntry entry;
      entry.kind = e.at("kind").get<std::string>() == "nv" ? SpanEntry::Kind::kNV
                                                           : SpanEntry::Kind::kVerbal;
      if (entry.kind == SpanEntry::Kind::kNV) entry.nv_id = e.at("nv_id").get<std::string>();
      entry.start = e.at("start").get<std::size_t>();
      entry.length = e.at("length").get<std::size_t>();
      s.span_map.push_back(std::move(entry));
    }
  } catch (const json::exception &e) {
    throw Error(ErrorKind::kParseError, std::string("augmented sample: ") + e.what());
  }
  return s;
}

namespace {

template <typename T>
std::string Join(const std::vector<T> &items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ';';
    if constexpr (std::is_same_v<T, std::string>)
      out += items[i];
    else
      out += std::to_string(items[i]);
  }
  return out;
}

}  // namespace

void WriteAugmentOutputs(const std::vector<AugmentResult> &results,
                         std::ostream &samples, std::ostream &summary,
                         std::ostream &log) {
  summary << "utterance_id,nv_ids,locations,plan_sizes\n";
  for (const AugmentResult &r : results) {
    if (!r.sample) {
      log << "skipped " << r.utterance_id << ": " << r.error << '\n';
      continue;
    }
    const AugmentedSample &s = *r.sample;
    samples << SerializeSample(s) << '\n';
    std::vector<std::size_t> sizes;
    for (const MaskSpan &m : s.plan.spans) sizes.push_back(m.length);
    summary << s.utterance_id << ',' << Join(s.provenance.nv_ids) << ','
            << Join(s.provenance.locations) << ',' << Join(sizes) << '\n';
  }
}

}  // namespace nvaug
