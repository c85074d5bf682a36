// src/commands.cc

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

#include "nvaug/commands.h"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "nvaug/dynamics.h"
#include "nvaug/errors.h"
#include "nvaug/eval_report.h"

namespace nvaug {

namespace {

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  return out;
}

std::ifstream OpenIn(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  return in;
}

template <typename Fn>
int Guarded(std::ostream &log, Fn &&fn) {
  try {
    fn();
    return 0;
  } catch (const Error &e) {
    log << "error: " << e.what() << '\n';
    return ExitCodeFor(e.kind());
  }
}

EmotionAttr CenterFor(const Corpus &corpus) {
  if (corpus.neutral_center) return *corpus.neutral_center;
  const std::vector<EmotionAttr> neutral = NeutralPseudoLabels(corpus);
  if (neutral.empty())
    throw Error(ErrorKind::kNoNeutralData, "no utterances labeled neutral");
  return ComputeNeutralCenter(neutral);
}

double MeanOfScoreFile(const std::string &path) {
  std::ifstream in = OpenIn(path);
  std::string line;
  int line_no = 0;
  double sum = 0.0;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      sum += nlohmann::json::parse(line).at("value").get<double>();
      ++n;
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::kParseError,
                  path + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (n == 0) throw Error(ErrorKind::kEmptyInput, "no scores in '" + path + "'");
  return sum / static_cast<double>(n);
}

double MeanNVSimFile(const std::string &path) {
  std::ifstream in = OpenIn(path);
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto rec = nlohmann::json::parse(line);
      pairs.emplace_back(rec.at("generated").get<std::vector<double>>(),
                         rec.at("reference").get<std::vector<double>>());
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::kParseError,
                  path + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return MeanNVSim(pairs);
}

}  // namespace

int CmdCenter(const std::string &manifest_in, const std::string &manifest_out,
              std::ostream &log) {
  return Guarded(log, [&] {
    Corpus corpus = LoadManifest(manifest_in);
    const std::vector<EmotionAttr> neutral = NeutralPseudoLabels(corpus);
    if (neutral.empty())
      throw Error(ErrorKind::kNoNeutralData, "no utterances labeled neutral");
    corpus.neutral_center = ComputeNeutralCenter(neutral);
    std::ofstream out = OpenOut(manifest_out);
    WriteManifest(corpus, out);
    if (!out) throw Error(ErrorKind::kIo, "write failed for '" + manifest_out + "'");
  });
}

int CmdAugment(const std::string &manifest_in, const RunConfig &config,
               const std::string &out_path, const std::string &summary_path,
               std::ostream &log) {
  return Guarded(log, [&] {
    config.Validate();
    const Corpus corpus = LoadManifest(manifest_in);
    if (config.strategy == Strategy::kAffectron && !corpus.neutral_center)
      throw Error(ErrorKind::kSchemaError,
                  "neutral_center: manifest is not centered (run `center` first)");
    const std::vector<AugmentResult> results =
        config.workers > 1 ? AugmentCorpus(corpus, config)
                           : AugmentCorpusSerial(corpus, config);
    std::ofstream samples = OpenOut(out_path);
    std::ofstream summary = OpenOut(summary_path);
    WriteAugmentOutputs(results, samples, summary, log);
    if (!samples || !summary) throw Error(ErrorKind::kIo, "write failed");
  });
}

int CmdAnalyzeGaps(const std::string &manifest_in, const RunConfig &config,
                   const std::string &out_csv, std::ostream &log) {
  return Guarded(log, [&] {
    config.Validate();
    const Corpus corpus = LoadManifest(manifest_in);
    const EmotionAttr center = CenterFor(corpus);
    GapOptions options;
    options.max_gap = config.max_gap;
    options.include_nv = config.include_nv;
    std::vector<GapProfile> profiles;
    for (DistanceMetric m :
         {DistanceMetric::kAngular, DistanceMetric::kCartesian, DistanceMetric::kRadial})
      profiles.push_back(ComputeGapProfile(corpus, m, center, options, config.workers));

    std::ofstream out = OpenOut(out_csv);
    out << "metric,gap,mean_distance,pair_count\n";
    for (const GapProfile &p : profiles)
      for (std::size_t g = 0; g < p.mean_distance.size(); ++g)
        out << MetricName(p.metric) << ',' << g + 1 << ','
            << FormatValue(p.mean_distance[g]) << ',' << p.pair_count[g] << '\n';
    if (!out) throw Error(ErrorKind::kIo, "write failed for '" + out_csv + "'");
  });
}

int CmdEval(const std::string &predictions_path, const std::string &references_path,
            const RunConfig &config, const std::string &out_csv,
            const EvalExtras &extras, std::ostream &log) {
  return Guarded(log, [&] {
    config.Validate();
    std::ifstream pin = OpenIn(predictions_path);
    std::ifstream rin = OpenIn(references_path);
    std::vector<TrackPrediction> predictions;
    std::vector<ReferenceEvent> references;
    try {
      predictions = ParsePredictions(pin);
    } catch (const Error &e) {
      throw Error(e.kind(), predictions_path + " " + e.detail());
    }
    try {
      references = ParseReferences(rin);
    } catch (const Error &e) {
      throw Error(e.kind(), references_path + " " + e.detail());
    }
    EvalReport report = Evaluate(predictions, references, config.jsd_base, config.bins);
    if (!extras.nv_sim_file.empty())
      report.metrics.push_back({"nv_sim", 0, MeanNVSimFile(extras.nv_sim_file)});
    for (const auto &[name, path] : extras.score_files)
      report.metrics.push_back({name, 0, MeanOfScoreFile(path)});

    std::ofstream out = OpenOut(out_csv);
    WriteMetricsCsv(report.metrics, out);
    if (!extras.distributions_csv.empty()) {
      std::ofstream dist = OpenOut(extras.distributions_csv);
      WriteDistributionsCsv(report.distributions, dist);
    }
  });
}

}  // namespace nvaug
