// include/nvaug/commands.h

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
#include <utility>
#include <vector>

#include "nvaug/pipeline.h"

namespace nvaug {

// Subcommand bodies. Each returns a process exit code (0 success, 1 I/O,
// 2 data/validation, 3 config) and reports failures on `log`.

int CmdCenter(const std::string &manifest_in, const std::string &manifest_out,
              std::ostream &log);

// Writes the sample JSONL to `out_path` and the summary CSV to `summary_path`.
int CmdAugment(const std::string &manifest_in, const RunConfig &config,
               const std::string &out_path, const std::string &summary_path,
               std::ostream &log);

// CSV columns metric,gap,mean_distance,pair_count for all three metrics.
int CmdAnalyzeGaps(const std::string &manifest_in, const RunConfig &config,
                   const std::string &out_csv, std::ostream &log);

struct EvalExtras {
  std::string distributions_csv;  // empty: skip
  // (metric name, JSONL path of {"item_id", "value"}) averaged into the report
  std::vector<std::pair<std::string, std::string>> score_files;
  std::string nv_sim_file;  // JSONL of {"item_id", "generated", "reference"}
};

int CmdEval(const std::string &predictions_path, const std::string &references_path,
            const RunConfig &config, const std::string &out_csv,
            const EvalExtras &extras, std::ostream &log);

}  // namespace nvaug
