// include/nvaug/token_rearrange.h

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

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nvaug/corpus.h"
#include "nvaug/rng.h"

namespace nvaug {

/// Control tokens appended after the codec vocabulary. A control token fills
/// one whole frame: the same id is written to all K codebook streams.
struct ControlVocab {
  int base_vocab = 1;
  int max_masks = 3;

  explicit ControlVocab(int vocab_size, int masks = 3)
      : base_vocab(vocab_size), max_masks(masks) {}

  Token MaskId(int n) const { return base_vocab + n; }  // n = 1..max_masks
  Token EmptyId() const { return base_vocab + max_masks + 1; }
  Token EogId() const { return base_vocab + max_masks + 2; }

  bool IsMask(Token t) const { return t > base_vocab && t <= base_vocab + max_masks; }
  int MaskNumber(Token t) const { return t - base_vocab; }
  bool IsBase(Token t) const { return t >= 0 && t < base_vocab; }
};

struct SpanEntry {
  enum class Kind { kVerbal, kNV };
  Kind kind = Kind::kVerbal;
  std::string nv_id;  // empty for verbal spans
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const SpanEntry &, const SpanEntry &) = default;
};

struct TranscriptItem {
  std::string text;
  bool is_tag = false;
};

struct SplicedSequence {
  TokenStreams streams;
  std::vector<SpanEntry> span_map;  // tiles [0, NumFrames()) in order
  std::vector<TranscriptItem> transcript;

  std::string TranscriptText() const;
};

struct PlannedInsertion {
  const NVCandidate *nv = nullptr;
  int location = 1;  // 1..I+1, sorted and distinct across a call
};

// "<laughter>" for nv_type "Laughter".
std::string NVTag(const std::string &nv_type);

// Frame index of insertion location `location` (1-based). Throws
// FrameIndexOutOfRange when the alignment runs more than one frame past the
// token stream.
std::size_t LocationFrame(const Utterance &utterance, int location);

SplicedSequence Splice(const Utterance &utterance,
                       std::span<const PlannedInsertion> insertions);

struct UnsplicedStreams {
  TokenStreams verbal;
  std::vector<std::pair<std::string, TokenStreams>> nvs;  // in span order
};

UnsplicedStreams Unsplice(const TokenStreams &streams,
                          std::span<const SpanEntry> span_map);

// Transcript with the tags removed.
std::vector<std::string> StripTags(std::span<const TranscriptItem> transcript);

struct MaskSpan {
  std::size_t start = 0;
  std::size_t length = 0;
  int mask_number = 1;  // n of M_n

  friend bool operator==(const MaskSpan &, const MaskSpan &) = default;
};

struct MaskPlan {
  std::vector<MaskSpan> spans;  // ascending start, disjoint
  std::string covered_nv;
};

struct MaskPlanConfig {
  std::size_t max_len = 600;
  int max_spans = 3;
  int forced_count = 0;  // 0: draw from the truncated Poisson(1)
  int retries = 100;
};

// Poisson(1) truncated to {1, ..., max_spans}.
int SampleMaskSpanCount(Rng &rng, int max_spans = 3);

// Span of `drawn_length` frames (raised to the NV length if shorter) that
// fully covers [nv_start, nv_start + nv_length), with the start offset drawn
// uniformly over every placement that fits in `total_frames`.
MaskSpan PlaceCoveringSpan(std::size_t nv_start, std::size_t nv_length,
                           std::size_t total_frames, std::size_t drawn_length,
                           Rng &rng);

// Throws NoNVSpan.
MaskPlan SampleMaskPlan(const SplicedSequence &seq, Rng &rng,
                        const MaskPlanConfig &config = {});

// Throws PlanMismatch.
void ValidateMaskPlan(const MaskPlan &plan, std::size_t num_frames,
                      const ControlVocab &vocab);

// Each masked span is replaced in place by one M_n frame and moved to the end
// as M_n, span frames, EOG. Output length = input length + 3 * spans.
TokenStreams ApplyMasks(const TokenStreams &streams, const MaskPlan &plan,
                        const ControlVocab &vocab);

// Throws MalformedMaskLayout.
TokenStreams UnapplyMasks(const TokenStreams &streams, const ControlVocab &vocab);

// Codebook k (0-based) is delayed by k frames; gaps hold EmptyId().
TokenStreams DelayStack(const TokenStreams &streams, const ControlVocab &vocab);

// Throws MalformedDelayLayout.
TokenStreams DelayUnstack(const TokenStreams &streams, const ControlVocab &vocab);

}  // namespace nvaug
