// tools/nvaug.cc

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

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "nvaug/commands.h"
#include "nvaug/errors.h"

namespace {

using namespace nvaug;

void AddSamplingFlags(CLI::App *cmd, RunConfig &cfg) {
  cmd->add_option("--k-match", cfg.k_match, "Top-K for NV matching")
      ->capture_default_str();
  cmd->add_option("--k-route", cfg.k_route, "Top-K for insertion routing")
      ->capture_default_str();
  cmd->add_option("--tau", cfg.tau, "Softmax temperature")->capture_default_str();
  cmd->add_option("--mixing", cfg.mixing, "NV pool: same or cross speaker")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, MixingMode>{{"same", MixingMode::kSameSpeaker},
                                            {"cross", MixingMode::kCrossSpeaker}},
          CLI::ignore_case))
      ->default_str("same");
  cmd->add_option("--strategy", cfg.strategy, "affectron or rule_random")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Strategy>{{"affectron", Strategy::kAffectron},
                                          {"rule_random", Strategy::kRuleRandom}},
          CLI::ignore_case))
      ->default_str("affectron");
  cmd->add_option("--mask-max-len", cfg.mask_max_len,
                  "Upper bound of the masked span length in frames")
      ->capture_default_str();
  cmd->add_option("--nv-count-dist", cfg.nv_count_dist,
                  "Law of the NV count: uniform12, always1, always2")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, NVCountDist>{{"uniform12", NVCountDist::kUniform12},
                                             {"always1", NVCountDist::kAlways1},
                                             {"always2", NVCountDist::kAlways2}},
          CLI::ignore_case))
      ->default_str("uniform12");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"NV corpus augmentation and evaluation toolkit"};
  app.footer(
      "Exit codes:\n"
      "  0  success\n"
      "  1  I/O error (unreadable input, unwritable output)\n"
      "  2  data or validation error (malformed manifest, missing neutral data,\n"
      "     no segment pairs, malformed prediction files)\n"
      "  3  configuration error (bad flag values, K < 1, tau <= 0)");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string in, out, summary, predictions, references, dist_out, nv_sim;
  std::vector<std::string> score_specs;

  auto *center = app.add_subcommand(
      "center", "Compute the neutral center and store it in the manifest header");
  center->add_option("manifest_in", in)->required();
  center->add_option("manifest_out", out)->required();

  auto *augment = app.add_subcommand("augment", "Build NV-augmented training samples");
  augment->add_option("manifest_in", in)->required();
  augment->add_option("out", out, "Augmented samples (JSONL)")->required();
  augment->add_option("--seed", cfg.seed, "Master seed")->required();
  augment->add_option("--summary", summary, "Summary CSV (default: <out>.summary.csv)");
  augment->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
  AddSamplingFlags(augment, cfg);

  auto *gaps = app.add_subcommand(
      "analyze-gaps", "Mean affective distance against word gap, per metric");
  gaps->add_option("manifest_in", in)->required();
  gaps->add_option("out_csv", out)->required();
  gaps->add_option("--max-gap", cfg.max_gap)->capture_default_str();
  gaps->add_option("--workers", cfg.workers)->capture_default_str();
  gaps->add_flag("--include-nv,!--exclude-nv", cfg.include_nv,
                 "Keep NV-flagged segments in the word sequence")
      ->capture_default_str();

  auto *eval = app.add_subcommand("eval", "Score NV type and location predictions");
  eval->add_option("predictions", predictions)->required();
  eval->add_option("references", references)->required();
  eval->add_option("out_csv", out)->required();
  eval->add_option("--jsd-base", cfg.jsd_base, "Logarithm base of JSD: 2 or e")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, LogBase>{{"2", LogBase::kTwo}, {"e", LogBase::kE}}))
      ->default_str("2");
  eval->add_option("--bins", cfg.bins, "Location bins")->capture_default_str();
  eval->add_option("--dist-out", dist_out, "Distributions CSV (label,p,q)");
  eval->add_option("--nv-sim", nv_sim, "JSONL of generated/reference embedding pairs");
  eval->add_option("--scores", score_specs,
                   "NAME=PATH JSONL of per-item {\"value\"} scores to average");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  if (*center) return CmdCenter(in, out, std::cerr);
  if (*augment)
    return CmdAugment(in, cfg, out, summary.empty() ? out + ".summary.csv" : summary,
                      std::cerr);
  if (*gaps) return CmdAnalyzeGaps(in, cfg, out, std::cerr);

  EvalExtras extras;
  extras.distributions_csv = dist_out;
  extras.nv_sim_file = nv_sim;
  for (const std::string &spec : score_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --scores expects NAME=PATH, got '" << spec << "'\n";
      return 3;
    }
    extras.score_files.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
  }
  return CmdEval(predictions, references, cfg, out, extras, std::cerr);
}
