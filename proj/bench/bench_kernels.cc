// bench/bench_kernels.cc

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

// Serial reference vs OpenMP driver for the two data-parallel kernels.
// The argument is the worker count for the parallel variants.

#include <benchmark/benchmark.h>

#include "nvaug/dynamics.h"
#include "nvaug/pipeline.h"
#include "support/synthetic.h"

namespace {

const nvaug::Corpus &GapCorpus() {
  static const nvaug::Corpus c = [] {
    nvaug::testing::SyntheticSpec spec;
    spec.num_utterances = 2000;
    spec.min_words = 10;
    spec.max_words = 40;
    return nvaug::testing::MakeCorpus(spec);
  }();
  return c;
}

const nvaug::Corpus &AugmentInput() {
  static const nvaug::Corpus c = [] {
    nvaug::testing::SyntheticSpec spec;
    spec.num_utterances = 1000;
    spec.seed = 42;
    return nvaug::testing::MakeCorpus(spec);
  }();
  return c;
}

void BM_GapProfileSerial(benchmark::State &state) {
  const nvaug::Corpus &c = GapCorpus();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        nvaug::GapProfileSerial(c, nvaug::DistanceMetric::kAngular, *c.neutral_center));
}

void BM_GapProfileParallel(benchmark::State &state) {
  const nvaug::Corpus &c = GapCorpus();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(nvaug::ComputeGapProfile(c, nvaug::DistanceMetric::kAngular,
                                                      *c.neutral_center, {}, workers));
}

void BM_AugmentSerial(benchmark::State &state) {
  nvaug::RunConfig cfg;
  cfg.seed = 42;
  for (auto _ : state) benchmark::DoNotOptimize(nvaug::AugmentCorpusSerial(AugmentInput(), cfg));
}

void BM_AugmentParallel(benchmark::State &state) {
  nvaug::RunConfig cfg;
  cfg.seed = 42;
  cfg.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nvaug::AugmentCorpus(AugmentInput(), cfg));
}

}  // namespace

BENCHMARK(BM_GapProfileSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GapProfileParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AugmentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AugmentParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
