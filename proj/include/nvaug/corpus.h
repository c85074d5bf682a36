// include/nvaug/corpus.h

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
#include <string_view>
#include <vector>

#include "nvaug/emotion_geometry.h"

namespace nvaug {

using Token = std::int32_t;

/// K parallel codebook streams, codebook-major: streams[k][t].
/// Loaded data only holds ids in [0, vocab_size); control ids are added by the
/// rearrangement stage.
struct TokenStreams {
  int num_codebooks = 1;
  int vocab_size = 1;
  double frame_rate = 1.0;
  std::vector<std::vector<Token>> streams;

  std::size_t NumFrames() const {
    return streams.empty() ? 0 : streams.front().size();
  }
  bool SameLayout(const TokenStreams &o) const {
    return num_codebooks == o.num_codebooks && vocab_size == o.vocab_size &&
           frame_rate == o.frame_rate;
  }
  friend bool operator==(const TokenStreams &, const TokenStreams &) = default;
};

struct WordSegment {
  int index = 0;  // 1-based
  std::string text;
  double start_time = 0.0;
  double end_time = 0.0;
  EmotionAttr attrs;
  bool is_nv = false;  // NV segment embedded in the word sequence
};

struct TimeInterval {
  double start_time = 0.0;
  double end_time = 0.0;
};

struct Utterance {
  std::string id;
  std::string speaker;
  std::string emotion_label;
  std::vector<WordSegment> segments;
  std::vector<double> embedding;
  TokenStreams tokens;

  std::vector<std::string> Transcript() const;
};

struct NVCandidate {
  std::string id;
  std::string speaker;
  std::string nv_type;
  std::vector<double> embedding;
  EmotionAttr attrs;
  TokenStreams tokens;
};

// NV inventory used when a manifest header does not declare one.
const std::vector<std::string> &DefaultNVVocabulary();

struct Corpus {
  int embedding_dim = 0;
  int num_codebooks = 1;
  int vocab_size = 1;
  double frame_rate = 1.0;
  std::vector<std::string> nv_vocabulary;
  std::vector<std::string> speakers;
  std::optional<EmotionAttr> neutral_center;
  std::vector<Utterance> utterances;
  std::vector<NVCandidate> nv_candidates;
};

// Manifest I/O. Loading validates every invariant and throws ParseError,
// SchemaError or InvariantViolation.
Corpus LoadManifest(const std::string &path);
Corpus ParseManifest(std::istream &in);
void WriteManifest(const Corpus &corpus, std::ostream &out);
std::string SerializeManifest(const Corpus &corpus);

// Re-checks all corpus invariants; used by the loader and by code that builds
// corpora in memory.
void ValidateCorpus(const Corpus &corpus);

/// Words parsed from a long-format TextGrid "words" tier. Empty-label
/// intervals are kept as silences.
struct AlignedWords {
  std::vector<WordSegment> words;
  std::vector<TimeInterval> silences;
};

AlignedWords ParseTextGrid(std::string_view text);

// True if ends of neighbouring words (or the utterance edges) leave a gap at
// insertion location `location` (1-based, 1..I+1). `total_duration` is the
// utterance length in seconds.
bool IsSilenceGap(const std::vector<WordSegment> &segments,
                  double total_duration, int location);

enum class MixingMode { kSameSpeaker, kCrossSpeaker };

// Throws NoCandidates if the filtered pool is empty.
std::vector<const NVCandidate *> FilterCandidates(const Corpus &corpus,
                                                  const Utterance &utterance,
                                                  MixingMode mode);

// Case-insensitive match against "neutral".
bool IsNeutralLabel(std::string_view emotion);

// Word-level pseudo-labels of every neutral utterance.
std::vector<EmotionAttr> NeutralPseudoLabels(const Corpus &corpus);

}  // namespace nvaug
