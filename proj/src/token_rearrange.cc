// src/token_rearrange.cc

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

#include "nvaug/token_rearrange.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "nvaug/errors.h"

namespace nvaug {

namespace {

TokenStreams EmptyLike(const TokenStreams &layout) {
  TokenStreams out;
  out.num_codebooks = layout.num_codebooks;
  out.vocab_size = layout.vocab_size;
  out.frame_rate = layout.frame_rate;
  out.streams.resize(layout.streams.size());
  return out;
}

void AppendFrames(TokenStreams &dst, const TokenStreams &src, std::size_t begin,
                  std::size_t end) {
  for (std::size_t k = 0; k < dst.streams.size(); ++k)
    dst.streams[k].insert(dst.streams[k].end(),
                          src.streams[k].begin() + static_cast<std::ptrdiff_t>(begin),
                          src.streams[k].begin() + static_cast<std::ptrdiff_t>(end));
}

void AppendControl(TokenStreams &dst, Token id) {
  for (auto &s : dst.streams) s.push_back(id);
}

}  // namespace

std::string NVTag(const std::string &nv_type) {
  std::string tag = "<";
  for (char c : nv_type)
    tag += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return tag + ">";
}

std::string SplicedSequence::TranscriptText() const {
  std::string out;
  for (const TranscriptItem &item : transcript) {
    if (!out.empty()) out += ' ';
    out += item.text;
  }
  return out;
}

std::vector<std::string> StripTags(std::span<const TranscriptItem> transcript) {
  std::vector<std::string> words;
  for (const TranscriptItem &item : transcript)
    if (!item.is_tag) words.push_back(item.text);
  return words;
}

std::size_t LocationFrame(const Utterance &utterance, int location) {
  const int n = static_cast<int>(utterance.segments.size());
  if (n == 0) throw Error(ErrorKind::kEmptySegments, utterance.id);
  if (location < 1 || location > n + 1)
    throw Error(ErrorKind::kOutOfRangeLocation,
                "location " + std::to_string(location) + " in utterance '" +
                    utterance.id + "'");
  const double time = location <= n ? utterance.segments[location - 1].start_time
                                    : utterance.segments[n - 1].end_time;
  const double frames = static_cast<double>(utterance.tokens.NumFrames());
  const double x = time * utterance.tokens.frame_rate;
  if (x > frames + 1.0)
    throw Error(ErrorKind::kFrameIndexOutOfRange,
                "utterance '" + utterance.id + "': location " +
                    std::to_string(location) + " maps past the token stream");
  return static_cast<std::size_t>(std::min(std::llround(x),
                                           static_cast<long long>(frames)));
}

SplicedSequence Splice(const Utterance &utterance,
                       std::span<const PlannedInsertion> insertions) {
  const int n = static_cast<int>(utterance.segments.size());
  for (std::size_t i = 0; i < insertions.size(); ++i) {
    const PlannedInsertion &ins = insertions[i];
    if (ins.nv == nullptr || !ins.nv->tokens.SameLayout(utterance.tokens) ||
        ins.nv->tokens.streams.size() != utterance.tokens.streams.size())
      throw Error(ErrorKind::kInvariantViolation,
                  "NV token layout does not match utterance '" + utterance.id + "'");
    if (i > 0 && ins.location <= insertions[i - 1].location)
      throw Error(ErrorKind::kInvariantViolation,
                  "insertions must be sorted by distinct location");
  }

  const TokenStreams &verbal = utterance.tokens;
  SplicedSequence seq;
  seq.streams = EmptyLike(verbal);
  std::size_t cursor = 0;
  auto emit_verbal = [&](std::size_t end) {
    if (end <= cursor) return;
    seq.span_map.push_back({SpanEntry::Kind::kVerbal, "", seq.streams.NumFrames(),
                            end - cursor});
    AppendFrames(seq.streams, verbal, cursor, end);
    cursor = end;
  };
  for (const PlannedInsertion &ins : insertions) {
    emit_verbal(LocationFrame(utterance, ins.location));
    const TokenStreams &nv = ins.nv->tokens;
    seq.span_map.push_back({SpanEntry::Kind::kNV, ins.nv->id,
                            seq.streams.NumFrames(), nv.NumFrames()});
    AppendFrames(seq.streams, nv, 0, nv.NumFrames());
  }
  emit_verbal(verbal.NumFrames());

  auto it = insertions.begin();
  for (int word = 1; word <= n + 1; ++word) {
    for (; it != insertions.end() && it->location == word; ++it)
      seq.transcript.push_back({NVTag(it->nv->nv_type), true});
    if (word <= n)
      seq.transcript.push_back({utterance.segments[word - 1].text, false});
  }
  return seq;
}

UnsplicedStreams Unsplice(const TokenStreams &streams,
                          std::span<const SpanEntry> span_map) {
  UnsplicedStreams out;
  out.verbal = EmptyLike(streams);
  std::size_t expected = 0;
  for (const SpanEntry &span : span_map) {
    if (span.start != expected || span.start + span.length > streams.NumFrames())
      throw Error(ErrorKind::kInvariantViolation,
                  "span map does not tile the sequence");
    if (span.kind == SpanEntry::Kind::kVerbal) {
      AppendFrames(out.verbal, streams, span.start, span.start + span.length);
    } else {
      TokenStreams nv = EmptyLike(streams);
      AppendFrames(nv, streams, span.start, span.start + span.length);
      out.nvs.emplace_back(span.nv_id, std::move(nv));
    }
    expected = span.start + span.length;
  }
  if (expected != streams.NumFrames())
    throw Error(ErrorKind::kInvariantViolation,
                "span map does not cover the sequence");
  return out;
}

// ---------------------------------------------------------------------------
// Mask plans

int SampleMaskSpanCount(Rng &rng, int max_spans) {
  // Poisson(1) pmf is proportional to 1/n!.
  std::vector<double> weights;
  double w = 1.0, total = 0.0;
  for (int n = 1; n <= max_spans; ++n) {
    w /= n;
    weights.push_back(w);
    total += w;
  }
  const double u = rng.Uniform01() * total;
  double cum = 0.0;
  for (int n = 1; n <= max_spans; ++n) {
    cum += weights[n - 1];
    if (u < cum) return n;
  }
  return max_spans;
}

MaskSpan PlaceCoveringSpan(std::size_t nv_start, std::size_t nv_length,
                           std::size_t total_frames, std::size_t drawn_length,
                           Rng &rng) {
  const std::size_t length =
      std::min(std::max(drawn_length, nv_length), total_frames);
  const std::size_t nv_end = nv_start + nv_length;
  const std::size_t lo = nv_end > length ? nv_end - length : 0;
  const std::size_t hi = std::min(nv_start, total_frames - length);
  const auto start = static_cast<std::size_t>(
      rng.UniformInt(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
  return {start, length, 1};
}

MaskPlan SampleMaskPlan(const SplicedSequence &seq, Rng &rng,
                        const MaskPlanConfig &config) {
  std::vector<const SpanEntry *> nv_spans;
  for (const SpanEntry &s : seq.span_map)
    if (s.kind == SpanEntry::Kind::kNV && s.length > 0) nv_spans.push_back(&s);
  if (nv_spans.empty())
    throw Error(ErrorKind::kNoNVSpan, "sequence contains no NV span");

  const int count = config.forced_count > 0
                        ? std::min(config.forced_count, config.max_spans)
                        : SampleMaskSpanCount(rng, config.max_spans);
  const SpanEntry &target = *nv_spans[static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<std::int64_t>(nv_spans.size()) - 1))];
  const std::size_t total = seq.streams.NumFrames();
  const auto upper =
      static_cast<std::int64_t>(std::max<std::size_t>(1, std::min(config.max_len, total)));

  MaskPlan plan;
  plan.covered_nv = target.nv_id;
  const auto drawn = static_cast<std::size_t>(rng.UniformInt(1, upper));
  plan.spans.push_back(PlaceCoveringSpan(target.start, target.length, total, drawn, rng));

  for (int i = 1; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < config.retries && !placed; ++attempt) {
      const auto len = static_cast<std::size_t>(rng.UniformInt(1, upper));
      const auto start = static_cast<std::size_t>(
          rng.UniformInt(0, static_cast<std::int64_t>(total - len)));
      const bool overlaps = std::any_of(
          plan.spans.begin(), plan.spans.end(), [&](const MaskSpan &s) {
            return start < s.start + s.length && s.start < start + len;
          });
      if (!overlaps) {
        plan.spans.push_back({start, len, 0});
        placed = true;
      }
    }
    if (!placed) break;
  }

  std::sort(plan.spans.begin(), plan.spans.end(),
            [](const MaskSpan &a, const MaskSpan &b) { return a.start < b.start; });
  for (std::size_t i = 0; i < plan.spans.size(); ++i)
    plan.spans[i].mask_number = static_cast<int>(i) + 1;
  return plan;
}

void ValidateMaskPlan(const MaskPlan &plan, std::size_t num_frames,
                      const ControlVocab &vocab) {
  if (plan.spans.empty())
    throw Error(ErrorKind::kPlanMismatch, "mask plan has no spans");
  if (static_cast<int>(plan.spans.size()) > vocab.max_masks)
    throw Error(ErrorKind::kPlanMismatch, "more mask spans than mask tokens");
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < plan.spans.size(); ++i) {
    const MaskSpan &s = plan.spans[i];
    if (s.length == 0 || s.start + s.length > num_frames)
      throw Error(ErrorKind::kPlanMismatch, "mask span outside the sequence");
    if (i > 0 && s.start < prev_end)
      throw Error(ErrorKind::kPlanMismatch, "mask spans overlap or are unsorted");
    if (s.mask_number != static_cast<int>(i) + 1)
      throw Error(ErrorKind::kPlanMismatch, "mask numbers must run 1..n");
    prev_end = s.start + s.length;
  }
}

TokenStreams ApplyMasks(const TokenStreams &streams, const MaskPlan &plan,
                        const ControlVocab &vocab) {
  ValidateMaskPlan(plan, streams.NumFrames(), vocab);
  TokenStreams out = EmptyLike(streams);
  std::size_t cursor = 0;
  for (const MaskSpan &s : plan.spans) {
    AppendFrames(out, streams, cursor, s.start);
    AppendControl(out, vocab.MaskId(s.mask_number));
    cursor = s.start + s.length;
  }
  AppendFrames(out, streams, cursor, streams.NumFrames());
  for (const MaskSpan &s : plan.spans) {
    AppendControl(out, vocab.MaskId(s.mask_number));
    AppendFrames(out, streams, s.start, s.start + s.length);
    AppendControl(out, vocab.EogId());
  }
  return out;
}

TokenStreams UnapplyMasks(const TokenStreams &streams, const ControlVocab &vocab) {
  auto fail = [](const std::string &why) -> Error {
    return Error(ErrorKind::kMalformedMaskLayout, why);
  };
  const std::size_t total = streams.NumFrames();
  // Frame-level control id, or -1 for an ordinary codec frame.
  auto control_at = [&](std::size_t t) -> Token {
    const Token head = streams.streams[0][t];
    const bool is_control = !vocab.IsBase(head);
    for (const auto &s : streams.streams) {
      if (vocab.IsBase(s[t]) == is_control)
        throw fail("frame " + std::to_string(t) + " mixes control and codec ids");
      if (is_control && s[t] != head)
        throw fail("control frame " + std::to_string(t) + " differs across codebooks");
    }
    return is_control ? head : -1;
  };

  std::vector<std::size_t> placeholders;
  std::size_t t = 0;
  for (; t < total; ++t) {
    const Token c = control_at(t);
    if (c < 0) continue;
    if (!vocab.IsMask(c))
      throw fail("unexpected control id " + std::to_string(c) + " in the body");
    const int n = vocab.MaskNumber(c);
    if (n == static_cast<int>(placeholders.size()) + 1) {
      placeholders.push_back(t);
    } else if (n == 1 && !placeholders.empty()) {
      break;  // start of the relocated tail
    } else {
      throw fail("mask M" + std::to_string(n) + " out of order");
    }
  }
  if (placeholders.empty()) {
    if (t != total) throw fail("tail without placeholders");
    return streams;
  }
  if (t == total) throw fail("dangling mask id without a relocated span");

  const std::size_t body_end = t;
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // [begin, end)
  for (std::size_t n = 1; n <= placeholders.size(); ++n) {
    if (t >= total || control_at(t) != vocab.MaskId(static_cast<int>(n)))
      throw fail("missing relocated span for M" + std::to_string(n));
    const std::size_t begin = ++t;
    while (t < total && control_at(t) < 0) ++t;
    if (t >= total || control_at(t) != vocab.EogId())
      throw fail("relocated span M" + std::to_string(n) + " lacks EOG");
    spans.emplace_back(begin, t);
    ++t;
  }
  if (t != total) throw fail("trailing frames after the relocated spans");

  TokenStreams out = EmptyLike(streams);
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < placeholders.size(); ++i) {
    AppendFrames(out, streams, cursor, placeholders[i]);
    AppendFrames(out, streams, spans[i].first, spans[i].second);
    cursor = placeholders[i] + 1;
  }
  AppendFrames(out, streams, cursor, body_end);
  return out;
}

// ---------------------------------------------------------------------------
// Delayed stacking

TokenStreams DelayStack(const TokenStreams &streams, const ControlVocab &vocab) {
  const std::size_t k_count = streams.streams.size();
  const std::size_t len = streams.NumFrames();
  TokenStreams out = EmptyLike(streams);
  const std::size_t out_len = len + (k_count > 0 ? k_count - 1 : 0);
  for (std::size_t k = 0; k < k_count; ++k) {
    auto &dst = out.streams[k];
    dst.assign(out_len, vocab.EmptyId());
    std::copy(streams.streams[k].begin(), streams.streams[k].end(),
              dst.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

TokenStreams DelayUnstack(const TokenStreams &streams, const ControlVocab &vocab) {
  const std::size_t k_count = streams.streams.size();
  const std::size_t out_len = streams.NumFrames();
  if (k_count == 0) return streams;
  if (out_len < k_count - 1)
    throw Error(ErrorKind::kMalformedDelayLayout, "sequence shorter than the delay");
  const std::size_t len = out_len - (k_count - 1);
  TokenStreams out = EmptyLike(streams);
  for (std::size_t k = 0; k < k_count; ++k) {
    const auto &src = streams.streams[k];
    if (src.size() != out_len)
      throw Error(ErrorKind::kMalformedDelayLayout, "ragged codebook streams");
    for (std::size_t j = 0; j < out_len; ++j) {
      const bool padding = j < k || j >= len + k;
      if (padding && src[j] != vocab.EmptyId())
        throw Error(ErrorKind::kMalformedDelayLayout,
                    "codebook " + std::to_string(k + 1) + " frame " +
                        std::to_string(j) + " should be empty");
    }
    out.streams[k].assign(src.begin() + static_cast<std::ptrdiff_t>(k),
                          src.begin() + static_cast<std::ptrdiff_t>(k + len));
  }
  return out;
}

}  // namespace nvaug
