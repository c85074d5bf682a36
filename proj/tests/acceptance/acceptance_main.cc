// tests/acceptance/acceptance_main.cc

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

// Exit-gate checks. Prints one PASS/FAIL line per criterion and returns
// non-zero if any criterion fails or runs over its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nvaug/commands.h"
#include "nvaug/dynamics.h"
#include "nvaug/emotion_geometry.h"
#include "nvaug/eval_report.h"
#include "nvaug/metrics.h"
#include "nvaug/nv_matching.h"
#include "nvaug/nv_routing.h"
#include "nvaug/pipeline.h"
#include "nvaug/rng.h"
#include "nvaug/token_rearrange.h"
#include "support/oracles.h"
#include "support/synthetic.h"
#include "support/token_cases.h"

using namespace nvaug;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

// Collects failed expectations; a criterion passes when none were recorded.
class Checker {
 public:
  void Expect(bool ok, const std::string &what) {
    if (!ok && failures_++ < 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void Near(double got, double want, double tol, const std::string &what) {
    if (!(std::fabs(got - want) <= tol)) {
      std::ostringstream m;
      m.precision(17);
      m << what << ": got " << got << " want " << want;
      Expect(false, m.str());
    }
  }
  int failures() const { return failures_; }
  const std::string &notes() const { return notes_; }

 private:
  int failures_ = 0;
  std::string notes_;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;  // 0: no limit
  std::function<void(Checker &)> body;
};

double Entropy(const SelectionDistribution &d) {
  double h = 0.0;
  for (const auto &e : d.entries)
    if (e.probability > 0.0) h -= e.probability * std::log(e.probability);
  return h;
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// 1
void SphericalRoundTrip(Checker &c) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int done = 0;
  while (done < 10000) {
    const EmotionAttr e{u(gen), u(gen), u(gen)};
    if (std::sqrt(e.arousal * e.arousal + e.valence * e.valence + e.dominance * e.dominance) <=
        1e-6)
      continue;
    ++done;
    const EmotionAttr b = FromSpherical(ToSpherical(e));
    c.Near(b.arousal, e.arousal, 1e-9, "arousal");
    c.Near(b.valence, e.valence, 1e-9, "valence");
    c.Near(b.dominance, e.dominance, 1e-9, "dominance");
  }
}

// 2
void AngularSuite(Checker &c) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(-kPi, kPi);
  for (int i = 0; i < 10000; ++i) {
    const SphericalEmotion a{1.0, th(gen), ph(gen)}, b{1.0, th(gen), ph(gen)};
    const double d = AngularDistance(a, b);
    c.Expect(!std::isnan(d), "NaN distance");
    c.Expect(d >= 0.0 && d <= kPi, "distance outside [0, pi]");
    c.Expect(d == AngularDistance(b, a), "asymmetric");
    c.Expect(AngularDistance(a, a) == 0.0, "non-zero self distance");
  }
  // inputs that push the cosine argument past +-1 before clamping
  const double e = 1e-15;
  using S = SphericalEmotion;
  c.Expect(!std::isnan(AngularDistance(S{1, 0, 0}, S{1, e, -e})), "near-identical NaN");
  c.Expect(!std::isnan(AngularDistance(S{1, 0, 0}, S{1, 0, kPi})), "antipodal NaN");
  c.Expect(!std::isnan(AngularDistance(S{1, kPi, kPi}, S{1, kPi - e, -kPi + e})), "edge NaN");
}

// 3
void MatchingSoftmax(Checker &c) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> size(2, 30);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> s(static_cast<std::size_t>(size(gen)));
    for (double &x : s) x = u(gen);
    const int full = static_cast<int>(s.size());
    const int k = std::uniform_int_distribution<int>(1, full)(gen);
    const auto base = TopKSoftmax(s, k, 0.7);
    std::vector<double> shifted = s;
    const double shift = u(gen) * 10.0;
    for (double &x : shifted) x += shift;
    const auto sh = TopKSoftmax(shifted, k, 0.7);
    c.Expect(sh.entries.size() == base.entries.size(), "shift changed support size");
    for (std::size_t i = 0; i < std::min(sh.entries.size(), base.entries.size()); ++i) {
      c.Expect(sh.entries[i].index == base.entries[i].index, "shift changed order");
      c.Near(sh.entries[i].probability, base.entries[i].probability, 1e-12, "shift invariance");
    }
    double prev = Entropy(TopKSoftmax(s, full, 10.0));
    for (double tau : {5.0, 2.0, 1.0, 0.7, 0.5, 0.3, 0.1}) {
      const double h = Entropy(TopKSoftmax(s, full, tau));
      c.Expect(h < prev, "entropy not strictly decreasing in tau");
      prev = h;
    }
  }
  std::uniform_int_distribution<int> level(0, 4);
  for (int n = 1; n <= 12; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> s(static_cast<std::size_t>(n));
      for (double &x : s) x = level(gen) * 0.25;
      std::vector<std::size_t> order(s.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return s[a] > s[b]; });
      for (int k = 1; k <= n; ++k) {
        const auto d = TopKSoftmax(s, k, 0.7);
        std::vector<std::size_t> got;
        for (const auto &e : d.entries) got.push_back(e.index);
        c.Expect(got == std::vector<std::size_t>(order.begin(), order.begin() + k),
                 "top-k set differs from sort oracle");
      }
    }
  const std::vector<double> two = {1.0, 0.3};
  c.Near(TopKSoftmax(two, 2, 0.7).entries[0].probability, 0.7310586, 1e-6, "two-candidate");
}

// 4
void RoutingOracle(Checker &c) {
  std::mt19937_64 gen(4);
  std::uniform_int_distribution<int> len(1, 10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto segments = [&](int n) {
    std::vector<WordSegment> s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      s[i].index = i + 1;
      s[i].attrs = {u(gen), u(gen), u(gen)};
    }
    return s;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    NVCandidate nv;
    nv.attrs = {u(gen), u(gen), u(gen)};
    const EmotionAttr m{u(gen), u(gen), u(gen)};
    const auto s = segments(len(gen));
    const auto got = InsertionDistances(nv, s, m).distances;
    const std::size_t n = s.size();
    c.Expect(got.size() == n + 1, "profile length");
    if (got.size() != n + 1) continue;
    auto delta = [&](std::size_t i) {
      return testing::OracleDistance(DistanceMetric::kAngular, nv.attrs, s[i].attrs, m);
    };
    for (std::size_t t = 1; t <= n + 1; ++t) {
      const double want = t == 1       ? delta(0)
                          : t == n + 1 ? delta(n - 1)
                                       : 0.5 * (delta(t - 2) + delta(t - 1));
      c.Near(got[t - 1], want, 1e-12, "termwise");
    }
    if (n == 1) c.Expect(got[0] == got[1], "I=1 collapse not exact");
  }
  Rng r(4);
  int agree = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    NVCandidate nv;
    nv.attrs = {u(gen), u(gen), u(gen)};
    const auto p = InsertionDistances(nv, segments(len(gen)), {0.5, 0.5, 0.5});
    const double best = *std::min_element(p.distances.begin(), p.distances.end());
    const RoutedInsertion got = Route(p, static_cast<int>(p.distances.size()), 1e-6, r);
    agree += p.distances[got.location - 1] == best;
  }
  c.Expect(agree == 10000, "arg-min agreement " + std::to_string(agree) + "/10000");
}

// 5
void PoissonSampler(Checker &c) {
  Rng r(5);
  std::map<int, int> counts;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[SampleMaskSpanCount(r)];
  c.Expect(counts.size() == 3, "support is not {1,2,3}");
  c.Near(counts[1] / double(n), 0.6, 0.01, "p(1)");
  c.Near(counts[2] / double(n), 0.3, 0.01, "p(2)");
  c.Near(counts[3] / double(n), 0.1, 0.01, "p(3)");
}

// 6
void FullInversion(Checker &c) {
  std::mt19937_64 gen(6);
  Rng r(6);
  const ControlVocab v(testing::kVocab);
  for (int i = 0; i < 1000; ++i) {
    const testing::Case k = testing::RandomCase(gen);
    const SplicedSequence s = Splice(k.utt, k.plan);
    const MaskPlan plan = SampleMaskPlan(s, r);
    const TokenStreams z = DelayStack(ApplyMasks(s.streams, plan, v), v);
    const UnsplicedStreams back = Unsplice(UnapplyMasks(DelayUnstack(z, v), v), s.span_map);
    c.Expect(back.verbal == k.utt.tokens, "verbal stream not recovered");
    c.Expect(back.nvs.size() == k.clips.size(), "NV count not recovered");
    for (std::size_t j = 0; j < std::min(back.nvs.size(), k.clips.size()); ++j)
      c.Expect(back.nvs[j].first == k.clips[j].id && back.nvs[j].second == k.clips[j].tokens,
               "NV stream not recovered");
  }
}

// 7
void DelayedStacking(Checker &c) {
  const ControlVocab v(testing::kVocab);
  const Token a1 = 1, a2 = 2, a3 = 3, b1 = 11, b2 = 12, b3 = 13, e = v.EmptyId();
  const TokenStreams x = testing::Streams({{a1, a2, a3}, {b1, b2, b3}});
  const TokenStreams z = DelayStack(x, v);
  c.Expect(z.streams[0] == std::vector<Token>{a1, a2, a3, e} &&
               z.streams[1] == std::vector<Token>{e, b1, b2, b3},
           "K=2 pattern");
  std::mt19937_64 gen(7);
  for (int i = 0; i < 200; ++i) {
    const int k = std::uniform_int_distribution<int>(1, 8)(gen);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 40)(gen);
    const TokenStreams s = testing::RandomStreams(gen, k, n);
    c.Expect(DelayUnstack(DelayStack(s, v), v) == s, "stack/unstack identity");
  }
}

// 8
void Metrics(Checker &c) {
  const CategoricalDistribution p{{"a", "b", "c"}, {0.2, 0.5, 0.3}};
  const CategoricalDistribution q{{"a", "b"}, {1.0, 0.0}}, r{{"a", "b"}, {0.0, 1.0}};
  c.Expect(JensenShannon(p, p) == 0.0 && Hellinger(p, p) == 0.0, "identical != 0");
  c.Expect(JensenShannon(q, r) == 1.0, "JSD disjoint != 1");
  c.Expect(Hellinger(q, r) == 1.0, "HD disjoint != 1");
  const CategoricalDistribution half{{"a", "b"}, {0.5, 0.5}};
  c.Near(JensenShannon(half, q), 0.3112781, 1e-6, "JSD hand case");
  c.Near(Hellinger(q, half), 0.5411961, 1e-6, "HD hand case");

  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> lab(0, 7), len(0, 6), cnt(1, 20);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PredictionRecord> recs;
    const int n = cnt(gen);
    for (int i = 0; i < n; ++i) {
      PredictionRecord rec;
      rec.item_id = "x" + std::to_string(i);
      const int m = len(gen);
      while (static_cast<int>(rec.ranked_predictions.size()) < m) {
        const std::string l = "l" + std::to_string(lab(gen));
        if (std::find(rec.ranked_predictions.begin(), rec.ranked_predictions.end(), l) ==
            rec.ranked_predictions.end())
          rec.ranked_predictions.push_back(l);
      }
      rec.ground_truth = "l" + std::to_string(lab(gen));
      recs.push_back(rec);
    }
    double prev = 0.0;
    for (int k = 1; k <= 8; ++k) {
      const double acc = AccAtK(recs, k);
      c.Expect(acc >= prev, "Acc@K not monotone");
      prev = acc;
    }
  }
}

// 9
void GapAnalysis(Checker &c) {
  const double step = 0.05;
  const Corpus corpus = testing::MakeLinearDriftCorpus(30, 14, {0.0, 0.0, step});
  const EmotionAttr center{0.0, 0.0, 0.0};
  for (DistanceMetric m :
       {DistanceMetric::kAngular, DistanceMetric::kCartesian, DistanceMetric::kRadial}) {
    const GapProfile got = ComputeGapProfile(corpus, m, center, {}, 4);
    const testing::OracleGaps want = testing::AllPairsGapOracle(corpus, m, center, 10, true);
    const std::string name(MetricName(m));
    for (int g = 1; g <= 10; ++g) {
      c.Expect(got.pair_count[g - 1] == want.count[g - 1], name + " pair count");
      c.Near(got.mean_distance[g - 1], want.mean[g - 1], 1e-12, name + " oracle");
      if (m == DistanceMetric::kCartesian)
        c.Near(got.mean_distance[g - 1], g * step, 1e-9, "cartesian proportional");
      if (g > 1)
        c.Expect(got.mean_distance[g - 1] >= got.mean_distance[g - 2], name + " not monotone");
    }
  }
}

struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string &tag) {
    path = fs::temp_directory_path() / ("nvaug_accept_" + tag + "_" +
                                        std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string &name) const { return (path / name).string(); }
};

// 10
void EndToEndDeterminism(Checker &c) {
  ScratchDir dir("e2e");
  testing::SyntheticSpec spec;
  spec.num_utterances = 200;
  spec.centered = false;
  spec.seed = 42;
  {
    std::ofstream out(dir / "raw.jsonl");
    WriteManifest(testing::MakeCorpus(spec), out);
  }
  std::ostringstream log;
  c.Expect(CmdCenter(dir / "raw.jsonl", dir / "corpus.jsonl", log) == 0, "center failed");
  RunConfig cfg;
  cfg.seed = 42;
  std::string first;
  int run = 0;
  for (int workers : {1, 1, 4, 8}) {
    cfg.workers = workers;
    const std::string out = dir / ("out" + std::to_string(run) + ".jsonl");
    const std::string sum = dir / ("sum" + std::to_string(run) + ".csv");
    ++run;
    c.Expect(CmdAugment(dir / "corpus.jsonl", cfg, out, sum, log) == 0, "augment failed");
    const std::string bytes = Slurp(out) + "\x1f" + Slurp(sum);
    if (first.empty()) {
      first = bytes;
      c.Expect(std::count(first.begin(), first.end(), '\n') > 200, "too few output lines");
    } else {
      c.Expect(bytes == first, "outputs differ at workers=" + std::to_string(workers));
    }
  }
  if (c.failures()) c.Expect(false, log.str());
}

// 11
void EvalShape(Checker &c) {
  ScratchDir dir("eval");
  {
    std::ofstream p(dir / "pred.jsonl");
    std::ofstream r(dir / "ref.jsonl");
    const char *types[] = {"laughter", "sigh", "breath", "cough"};
    for (int i = 0; i < 12; ++i) {
      const std::string id = "\"item" + std::to_string(i) + "\"";
      const std::string type = types[i % 4];
      const int segs = 3 + i % 7;
      const int loc = 1 + (i * 5) % (segs + 1);
      p << "{\"item_id\":" << id << ",\"track\":\"type\",\"ranked\":[\"" << type
        << "\",\"other\"]}\n";
      p << "{\"item_id\":" << id << ",\"track\":\"location\",\"ranked\":[" << loc
        << "],\"num_segments\":" << segs << "}\n";
      r << "{\"item_id\":" << id << ",\"track\":\"type\",\"label\":\"" << type << "\"}\n";
      r << "{\"item_id\":" << id << ",\"track\":\"location\",\"label\":" << loc
        << ",\"num_segments\":" << segs << "}\n";
    }
  }
  std::ostringstream log;
  RunConfig cfg;
  const int rc = CmdEval(dir / "pred.jsonl", dir / "ref.jsonl", cfg, dir / "m.csv", {}, log);
  c.Expect(rc == 0, "eval failed: " + log.str());
  const std::string want =
      "metric,k,value\n"
      "acc_location,1,1\nacc_location,3,1\nacc_location,5,1\n"
      "jsd_location,,0\nhd_location,,0\n"
      "acc_type,1,1\nacc_type,3,1\nacc_type,5,1\n"
      "jsd_type,,0\nhd_type,,0\n";
  c.Expect(Slurp(dir / "m.csv") == want, "metric grid differs");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "spherical round trip", 1.0, SphericalRoundTrip},
      {2, "angular metric suite", 1.0, AngularSuite},
      {3, "matching softmax", 0.0, MatchingSoftmax},
      {4, "routing distances and arg-min", 0.0, RoutingOracle},
      {5, "truncated Poisson sampler", 2.0, PoissonSampler},
      {6, "full pipeline invertibility", 10.0, FullInversion},
      {7, "delayed stacking", 0.0, DelayedStacking},
      {8, "JSD, HD and Acc@K", 0.0, Metrics},
      {9, "gap analysis against all-pairs oracle", 0.0, GapAnalysis},
      {10, "end-to-end determinism", 30.0, EndToEndDeterminism},
      {11, "eval metric grid and self prediction", 0.0, EvalShape},
  };
  int failed = 0;
  for (const Criterion &cr : criteria) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception &e) {
      c.Expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.budget_s > 0 && secs > cr.budget_s)
      c.Expect(false, "over time budget of " + std::to_string(cr.budget_s) + " s");
    const bool ok = c.failures() == 0;
    failed += !ok;
    std::printf("%s criterion %2d: %s (%.3f s)%s%s\n", ok ? "PASS" : "FAIL", cr.id,
                cr.name.c_str(), secs, ok ? "" : " : ", c.notes().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
