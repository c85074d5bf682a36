// src/eval_report.cc

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

#include "nvaug/eval_report.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "nvaug/errors.h"

namespace nvaug {

using nlohmann::json;

namespace {

constexpr const char *kTracks[] = {"location", "type"};

[[noreturn]] void LineError(int line, const std::string &why) {
  throw Error(ErrorKind::kParseError, "line " + std::to_string(line) + ": " + why);
}

bool IsBlank(const std::string &s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

// Location labels are normalized to their integer spelling.
std::string Label(const json &v, const std::string &track, int line) {
  if (track == "location") {
    long loc = 0;
    if (v.is_number_integer()) {
      loc = v.get<long>();
    } else if (v.is_string()) {
      const std::string s = v.get<std::string>();
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), loc);
      if (ec != std::errc() || p != s.data() + s.size())
        LineError(line, "location label '" + s + "' is not an integer");
    } else {
      LineError(line, "location label must be an integer");
    }
    return std::to_string(loc);
  }
  if (!v.is_string()) LineError(line, "type label must be a string");
  return v.get<std::string>();
}

std::string Track(const json &rec, int line) {
  if (!rec.contains("track") || !rec["track"].is_string())
    LineError(line, "missing 'track'");
  std::string t = rec["track"].get<std::string>();
  if (t != "location" && t != "type") LineError(line, "unknown track '" + t + "'");
  return t;
}

template <typename Fn>
void ForEachRecord(std::istream &in, Fn &&fn) {
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (IsBlank(text)) continue;
    json rec;
    try {
      rec = json::parse(text);
    } catch (const json::parse_error &e) {
      LineError(line, e.what());
    }
    if (!rec.is_object()) LineError(line, "record is not an object");
    try {
      fn(rec, line);
    } catch (const json::exception &e) {
      LineError(line, e.what());
    }
  }
}

int NumSegments(const json &rec) {
  return rec.contains("num_segments") ? rec["num_segments"].get<int>() : 0;
}

}  // namespace

std::vector<TrackPrediction> ParsePredictions(std::istream &in) {
  std::vector<TrackPrediction> out;
  ForEachRecord(in, [&](const json &rec, int line) {
    TrackPrediction p;
    p.track = Track(rec, line);
    p.record.item_id = rec.at("item_id").get<std::string>();
    std::set<std::string> seen;
    for (const json &v : rec.at("ranked")) {
      std::string label = Label(v, p.track, line);
      if (!seen.insert(label).second)
        LineError(line, "duplicate label '" + label + "' in ranked list");
      p.record.ranked_predictions.push_back(std::move(label));
    }
    if (rec.contains("gt")) p.record.ground_truth = Label(rec["gt"], p.track, line);
    p.num_segments = NumSegments(rec);
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<ReferenceEvent> ParseReferences(std::istream &in) {
  std::vector<ReferenceEvent> out;
  ForEachRecord(in, [&](const json &rec, int line) {
    ReferenceEvent r;
    r.track = Track(rec, line);
    r.item_id = rec.at("item_id").get<std::string>();
    r.label = Label(rec.at("label"), r.track, line);
    r.num_segments = NumSegments(rec);
    out.push_back(std::move(r));
  });
  return out;
}

EvalReport Evaluate(const std::vector<TrackPrediction> &predictions,
                    const std::vector<ReferenceEvent> &references,
                    LogBase jsd_base, int bins) {
  EvalReport report;
  for (const std::string track : kTracks) {
    std::map<std::string, const ReferenceEvent *> ref_by_item;
    std::vector<const ReferenceEvent *> refs;
    for (const ReferenceEvent &r : references)
      if (r.track == track) {
        refs.push_back(&r);
        ref_by_item.emplace(r.item_id, &r);
      }
    std::vector<PredictionRecord> records;
    std::vector<int> segs;
    for (const TrackPrediction &p : predictions) {
      if (p.track != track) continue;
      PredictionRecord rec = p.record;
      const auto ref = ref_by_item.find(rec.item_id);
      if (rec.ground_truth.empty()) {
        if (ref == ref_by_item.end())
          throw Error(ErrorKind::kSchemaError,
                      "no ground truth for " + track + " item '" + rec.item_id + "'");
        rec.ground_truth = ref->second->label;
      }
      if (rec.ranked_predictions.empty())
        throw Error(ErrorKind::kSchemaError,
                    "empty ranked list for item '" + rec.item_id + "'");
      int n = p.num_segments;
      if (n == 0 && ref != ref_by_item.end()) n = ref->second->num_segments;
      segs.push_back(n);
      records.push_back(std::move(rec));
    }
    if (records.empty()) continue;

    for (int k : kReportedK)
      report.metrics.push_back({"acc_" + track, k, AccAtK(records, k)});

    // Reference events default to the predictions' own ground truth.
    std::vector<std::string> ref_labels, pred_labels;
    std::vector<int> ref_segs;
    if (refs.empty()) {
      for (std::size_t i = 0; i < records.size(); ++i) {
        ref_labels.push_back(records[i].ground_truth);
        ref_segs.push_back(segs[i]);
      }
    } else {
      for (const ReferenceEvent *r : refs) {
        ref_labels.push_back(r->label);
        ref_segs.push_back(r->num_segments);
      }
    }
    for (const PredictionRecord &r : records)
      pred_labels.push_back(r.ranked_predictions.front());

    CategoricalDistribution p, q;
    if (track == "type") {
      std::set<std::string> vocab(ref_labels.begin(), ref_labels.end());
      vocab.insert(pred_labels.begin(), pred_labels.end());
      const std::vector<std::string> v(vocab.begin(), vocab.end());
      p = TypeDistribution(ref_labels, v);
      q = TypeDistribution(pred_labels, v);
    } else {
      auto events = [](const std::vector<std::string> &labels,
                       const std::vector<int> &n) {
        std::vector<LocationEvent> ev;
        for (std::size_t i = 0; i < labels.size(); ++i) {
          if (n[i] < 1)
            throw Error(ErrorKind::kSchemaError,
                        "location events need num_segments");
          ev.push_back({std::stoi(labels[i]), n[i]});
        }
        return ev;
      };
      p = LocationDistribution(events(ref_labels, ref_segs), bins);
      q = LocationDistribution(events(pred_labels, segs), bins);
    }
    report.metrics.push_back({"jsd_" + track, 0, JensenShannon(p, q, jsd_base)});
    report.metrics.push_back({"hd_" + track, 0, Hellinger(p, q)});
    for (std::size_t i = 0; i < p.labels.size(); ++i)
      report.distributions.push_back({track + ":" + p.labels[i], p.probs[i], q.probs[i]});
  }
  if (report.metrics.empty())
    throw Error(ErrorKind::kEmptyInput, "no prediction records");
  return report;
}

std::string FormatValue(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void WriteMetricsCsv(const std::vector<MetricRow> &rows, std::ostream &out) {
  out << "metric,k,value\n";
  for (const MetricRow &r : rows) {
    out << r.metric << ',';
    if (r.k > 0) out << r.k;
    out << ',' << FormatValue(r.value) << '\n';
  }
}

void WriteDistributionsCsv(const std::vector<DistributionRow> &rows,
                           std::ostream &out) {
  out << "label,p,q\n";
  for (const DistributionRow &r : rows)
    out << r.label << ',' << FormatValue(r.p) << ',' << FormatValue(r.q) << '\n';
}

}  // namespace nvaug
