// src/corpus.cc

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

#include "nvaug/corpus.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "nvaug/errors.h"

namespace nvaug {

using nlohmann::json;

std::vector<std::string> Utterance::Transcript() const {
  std::vector<std::string> words;
  words.reserve(segments.size());
  for (const WordSegment &s : segments) words.push_back(s.text);
  return words;
}

const std::vector<std::string> &DefaultNVVocabulary() {
  static const std::vector<std::string> vocab = {
      "Agreement", "Anger",    "Congratulations", "Filler",  "Greetings",
      "Cheering",  "Crying",   "Laughter",        "Screaming", "Yelling",
      "Coughing",  "Eating",   "Sneezing",        "Throat",  "Yawning"};
  return vocab;
}

bool IsNeutralLabel(std::string_view emotion) {
  constexpr std::string_view kNeutral = "neutral";
  if (emotion.size() != kNeutral.size()) return false;
  for (std::size_t i = 0; i < emotion.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(emotion[i])) != kNeutral[i])
      return false;
  return true;
}

std::vector<EmotionAttr> NeutralPseudoLabels(const Corpus &corpus) {
  std::vector<EmotionAttr> points;
  for (const Utterance &u : corpus.utterances) {
    if (!IsNeutralLabel(u.emotion_label)) continue;
    for (const WordSegment &s : u.segments) points.push_back(s.attrs);
  }
  return points;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

[[noreturn]] void Violation(const std::string &id, const std::string &rule) {
  throw Error(ErrorKind::kInvariantViolation, "record '" + id + "': " + rule);
}

void ValidateTokens(const TokenStreams &t, const Corpus &c,
                    const std::string &id) {
  if (t.num_codebooks != c.num_codebooks || t.vocab_size != c.vocab_size ||
      t.frame_rate != c.frame_rate)
    Violation(id, "token stream layout differs from the corpus");
  if (static_cast<int>(t.streams.size()) != c.num_codebooks)
    throw Error(ErrorKind::kSchemaError,
                "tokens: expected " + std::to_string(c.num_codebooks) +
                    " codebook streams in record '" + id + "'");
  const std::size_t len = t.NumFrames();
  for (const auto &s : t.streams) {
    if (s.size() != len) Violation(id, "codebook streams differ in length");
    for (Token x : s)
      if (x < 0 || x >= c.vocab_size)
        Violation(id, "token id " + std::to_string(x) + " outside [0, " +
                          std::to_string(c.vocab_size) + ")");
  }
}

void ValidateEmbedding(const std::vector<double> &e, const Corpus &c,
                       const std::string &id) {
  if (static_cast<int>(e.size()) != c.embedding_dim)
    throw Error(ErrorKind::kSchemaError,
                "embedding: record '" + id + "' has dimension " +
                    std::to_string(e.size()) + ", corpus declares " +
                    std::to_string(c.embedding_dim));
  for (double x : e)
    if (!std::isfinite(x)) Violation(id, "non-finite embedding value");
}

void ValidateSegments(const Utterance &u) {
  if (u.segments.empty()) Violation(u.id, "utterance has no word segments");
  for (std::size_t i = 0; i < u.segments.size(); ++i) {
    const WordSegment &s = u.segments[i];
    if (s.index != static_cast<int>(i) + 1)
      Violation(u.id, "word segment indices are not 1..I");
    if (!std::isfinite(s.start_time) || !std::isfinite(s.end_time) ||
        s.start_time < 0.0 || !(s.end_time > s.start_time))
      Violation(u.id, "word segment " + std::to_string(i + 1) +
                          " has invalid times");
    if (!s.attrs.IsFinite())
      Violation(u.id, "word segment " + std::to_string(i + 1) +
                          " has non-finite attributes");
    if (i + 1 < u.segments.size() &&
        s.end_time > u.segments[i + 1].start_time)
      Violation(u.id, "overlapping word segments " + std::to_string(i + 1) +
                          " and " + std::to_string(i + 2));
  }
}

// Checks that need only the header; run per record while parsing so errors
// can point at a line.
void ValidateUtterance(const Utterance &u, const Corpus &c) {
  ValidateSegments(u);
  ValidateEmbedding(u.embedding, c, u.id);
  ValidateTokens(u.tokens, c, u.id);
}

void ValidateCandidate(const NVCandidate &nv, const Corpus &c) {
  if (!nv.attrs.IsFinite()) Violation(nv.id, "non-finite attributes");
  ValidateEmbedding(nv.embedding, c, nv.id);
  ValidateTokens(nv.tokens, c, nv.id);
  if (nv.tokens.NumFrames() == 0) Violation(nv.id, "empty NV token stream");
}

}  // namespace

void ValidateCorpus(const Corpus &c) {
  if (c.embedding_dim < 1 || c.num_codebooks < 1 || c.vocab_size < 1 ||
      !(c.frame_rate > 0.0))
    throw Error(ErrorKind::kSchemaError,
                "header: embedding_dim, num_codebooks, vocab_size and "
                "frame_rate must be positive");
  if (c.neutral_center && !c.neutral_center->IsFinite())
    throw Error(ErrorKind::kSchemaError, "neutral_center: non-finite value");

  const std::set<std::string> speakers(c.speakers.begin(), c.speakers.end());
  const std::set<std::string> vocab(c.nv_vocabulary.begin(),
                                    c.nv_vocabulary.end());
  std::unordered_set<std::string> ids;

  for (const Utterance &u : c.utterances) {
    if (!ids.insert(u.id).second) Violation(u.id, "duplicate record id");
    if (!speakers.count(u.speaker))
      Violation(u.id, "undeclared speaker '" + u.speaker + "'");
    ValidateUtterance(u, c);
  }
  for (const NVCandidate &nv : c.nv_candidates) {
    if (!ids.insert(nv.id).second) Violation(nv.id, "duplicate record id");
    if (!speakers.count(nv.speaker))
      Violation(nv.id, "undeclared speaker '" + nv.speaker + "'");
    if (!vocab.count(nv.nv_type))
      Violation(nv.id, "NV type '" + nv.nv_type + "' not in vocabulary");
    ValidateCandidate(nv, c);
  }
}

// ---------------------------------------------------------------------------
// Manifest reading

namespace {

const json &Field(const json &rec, const char *name) {
  auto it = rec.find(name);
  if (it == rec.end())
    throw Error(ErrorKind::kSchemaError, std::string(name) + ": missing");
  return *it;
}

double Number(const json &rec, const char *name) {
  const json &v = Field(rec, name);
  if (!v.is_number())
    throw Error(ErrorKind::kSchemaError, std::string(name) + ": not a number");
  return v.get<double>();
}

int Integer(const json &rec, const char *name) {
  const json &v = Field(rec, name);
  if (!v.is_number_integer())
    throw Error(ErrorKind::kSchemaError,
                std::string(name) + ": not an integer");
  return v.get<int>();
}

std::string String(const json &rec, const char *name) {
  const json &v = Field(rec, name);
  if (!v.is_string())
    throw Error(ErrorKind::kSchemaError, std::string(name) + ": not a string");
  return v.get<std::string>();
}

std::vector<double> NumberArray(const json &rec, const char *name) {
  const json &v = Field(rec, name);
  if (!v.is_array())
    throw Error(ErrorKind::kSchemaError, std::string(name) + ": not an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json &x : v) {
    if (!x.is_number())
      throw Error(ErrorKind::kSchemaError,
                  std::string(name) + ": non-numeric entry");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::string> StringArray(const json &rec, const char *name) {
  const json &v = Field(rec, name);
  if (!v.is_array())
    throw Error(ErrorKind::kSchemaError, std::string(name) + ": not an array");
  std::vector<std::string> out;
  for (const json &x : v) {
    if (!x.is_string())
      throw Error(ErrorKind::kSchemaError,
                  std::string(name) + ": non-string entry");
    out.push_back(x.get<std::string>());
  }
  return out;
}

EmotionAttr Attrs(const json &rec) {
  return {Number(rec, "a"), Number(rec, "v"), Number(rec, "d")};
}

TokenStreams Tokens(const json &rec, const Corpus &c) {
  const json &v = Field(rec, "tokens");
  if (!v.is_array())
    throw Error(ErrorKind::kSchemaError, "tokens: not an array of streams");
  TokenStreams t;
  t.num_codebooks = c.num_codebooks;
  t.vocab_size = c.vocab_size;
  t.frame_rate = c.frame_rate;
  for (const json &stream : v) {
    if (!stream.is_array())
      throw Error(ErrorKind::kSchemaError, "tokens: stream is not an array");
    std::vector<Token> s;
    s.reserve(stream.size());
    for (const json &x : stream) {
      if (!x.is_number_integer())
        throw Error(ErrorKind::kSchemaError, "tokens: non-integer token");
      s.push_back(x.get<Token>());
    }
    t.streams.push_back(std::move(s));
  }
  return t;
}

void ReadHeader(const json &rec, Corpus &c) {
  c.embedding_dim = Integer(rec, "embedding_dim");
  c.num_codebooks = Integer(rec, "num_codebooks");
  c.vocab_size = Integer(rec, "vocab_size");
  c.frame_rate = Number(rec, "frame_rate");
  c.speakers = StringArray(rec, "speakers");
  c.nv_vocabulary = rec.contains("nv_vocabulary")
                        ? StringArray(rec, "nv_vocabulary")
                        : DefaultNVVocabulary();
  if (rec.contains("neutral_center"))
    c.neutral_center = Attrs(rec.at("neutral_center"));
}

Utterance ReadUtterance(const json &rec, const Corpus &c) {
  Utterance u;
  u.id = String(rec, "id");
  u.speaker = String(rec, "speaker");
  u.emotion_label = String(rec, "emotion");
  const json &words = Field(rec, "words");
  if (!words.is_array())
    throw Error(ErrorKind::kSchemaError, "words: not an array");
  int index = 1;
  for (const json &w : words) {
    WordSegment s;
    s.index = index++;
    s.text = String(w, "w");
    s.start_time = Number(w, "t0");
    s.end_time = Number(w, "t1");
    s.attrs = Attrs(w);
    if (w.contains("nv")) s.is_nv = w.at("nv").get<bool>();
    u.segments.push_back(std::move(s));
  }
  u.embedding = NumberArray(rec, "embedding");
  u.tokens = Tokens(rec, c);
  return u;
}

NVCandidate ReadCandidate(const json &rec, const Corpus &c) {
  NVCandidate nv;
  nv.id = String(rec, "id");
  nv.speaker = String(rec, "speaker");
  nv.nv_type = String(rec, "type");
  nv.attrs = Attrs(rec);
  nv.embedding = NumberArray(rec, "embedding");
  nv.tokens = Tokens(rec, c);
  return nv;
}

}  // namespace

Corpus ParseManifest(std::istream &in) {
  Corpus c;
  bool have_header = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(),
                    [](unsigned char ch) { return std::isspace(ch); }))
      continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error &e) {
      throw Error(ErrorKind::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!rec.is_object())
      throw Error(ErrorKind::kParseError,
                  "line " + std::to_string(line_no) + ": record is not an object");
    try {
      const std::string kind = String(rec, "kind");
      if (kind == "header") {
        if (have_header)
          throw Error(ErrorKind::kSchemaError, "kind: duplicate header");
        ReadHeader(rec, c);
        have_header = true;
      } else if (!have_header) {
        throw Error(ErrorKind::kSchemaError,
                    "kind: first record must be the header");
      } else if (kind == "utt") {
        c.utterances.push_back(ReadUtterance(rec, c));
        ValidateUtterance(c.utterances.back(), c);
      } else if (kind == "nv") {
        c.nv_candidates.push_back(ReadCandidate(rec, c));
        ValidateCandidate(c.nv_candidates.back(), c);
      } else {
        throw Error(ErrorKind::kSchemaError, "kind: unknown '" + kind + "'");
      }
    } catch (const Error &e) {
      // Annotate with the line; keep the kind so callers can map exit codes.
      throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.detail());
    } catch (const json::exception &e) {
      throw Error(ErrorKind::kSchemaError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header)
    throw Error(ErrorKind::kSchemaError, "kind: manifest has no header record");
  ValidateCorpus(c);
  return c;
}

Corpus LoadManifest(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open manifest '" + path + "'");
  return ParseManifest(in);
}

// ---------------------------------------------------------------------------
// Manifest writing

namespace {

json AttrsJson(const EmotionAttr &e) {
  return {{"a", e.arousal}, {"v", e.valence}, {"d", e.dominance}};
}

void PutAttrs(json &rec, const EmotionAttr &e) {
  rec["a"] = e.arousal;
  rec["v"] = e.valence;
  rec["d"] = e.dominance;
}

}  // namespace

void WriteManifest(const Corpus &c, std::ostream &out) {
  json header = {{"kind", "header"},
                 {"embedding_dim", c.embedding_dim},
                 {"num_codebooks", c.num_codebooks},
                 {"vocab_size", c.vocab_size},
                 {"frame_rate", c.frame_rate},
                 {"nv_vocabulary", c.nv_vocabulary},
                 {"speakers", c.speakers}};
  if (c.neutral_center) header["neutral_center"] = AttrsJson(*c.neutral_center);
  out << header.dump() << '\n';

  for (const Utterance &u : c.utterances) {
    json words = json::array();
    for (const WordSegment &s : u.segments) {
      json w = {{"w", s.text}, {"t0", s.start_time}, {"t1", s.end_time}};
      PutAttrs(w, s.attrs);
      if (s.is_nv) w["nv"] = true;
      words.push_back(std::move(w));
    }
    json rec = {{"kind", "utt"},       {"id", u.id},
                {"speaker", u.speaker}, {"emotion", u.emotion_label},
                {"words", words},       {"embedding", u.embedding},
                {"tokens", u.tokens.streams}};
    out << rec.dump() << '\n';
  }
  for (const NVCandidate &nv : c.nv_candidates) {
    json rec = {{"kind", "nv"},           {"id", nv.id},
                {"speaker", nv.speaker},   {"type", nv.nv_type},
                {"embedding", nv.embedding}, {"tokens", nv.tokens.streams}};
    PutAttrs(rec, nv.attrs);
    out << rec.dump() << '\n';
  }
}

std::string SerializeManifest(const Corpus &corpus) {
  std::ostringstream out;
  WriteManifest(corpus, out);
  return out.str();
}

// ---------------------------------------------------------------------------
// TextGrid (long text format)

namespace {

class TextGridReader {
 public:
  explicit TextGridReader(std::string_view text) {
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      std::string_view raw = text.substr(pos, end - pos);
      std::string_view line = Trim(raw);
      if (!line.empty()) lines_.push_back({std::string(line), line_no});
      if (end == text.size()) break;
      pos = end + 1;
    }
    last_line_ = line_no;
  }

  bool AtEnd() const { return cur_ >= lines_.size(); }

  // Consumes "key = value" and returns the raw value text.
  std::string Expect(std::string_view key) {
    const Line &l = Next(key);
    const std::size_t eq = l.text.find('=');
    if (eq == std::string::npos || Trim(std::string_view(l.text).substr(0, eq)) != key)
      Fail(l.number, "expected '" + std::string(key) + " = ...'");
    std::string value(Trim(std::string_view(l.text).substr(eq + 1)));
    // Praat strings may continue over several lines.
    if (!value.empty() && value.front() == '"') {
      while (!StringClosed(value)) {
        if (AtEnd()) Fail(last_line_, "unterminated string");
        value += '\n';
        value += lines_[cur_++].text;
      }
    }
    return value;
  }

  double ExpectNumber(std::string_view key) {
    const int line = CurrentLine();
    const std::string v = Expect(key);
    double x = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
      Fail(line, "'" + std::string(key) + "' is not a number");
    return x;
  }

  std::string ExpectString(std::string_view key) {
    const int line = CurrentLine();
    const std::string v = Expect(key);
    if (v.size() < 2 || v.front() != '"' || v.back() != '"')
      Fail(line, "'" + std::string(key) + "' is not a quoted string");
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      out += v[i];
      if (v[i] == '"') ++i;  // "" escapes a quote
    }
    return out;
  }

  // Consumes a line that must begin with `prefix`, e.g. "item [1]:".
  std::string ExpectLine(std::string_view prefix) {
    const Line &l = Next(prefix);
    if (l.text.rfind(prefix, 0) != 0)
      Fail(l.number, "expected '" + std::string(prefix) + "'");
    return l.text;
  }

  // "intervals: size = N" style count line.
  long ExpectSize(std::string_view prefix) {
    const Line &l = Next(prefix);
    const std::string want = std::string(prefix) + ": size =";
    if (l.text.rfind(want, 0) != 0) Fail(l.number, "expected '" + want + " N'");
    const std::string_view n = Trim(std::string_view(l.text).substr(want.size()));
    long v = 0;
    auto [p, ec] = std::from_chars(n.data(), n.data() + n.size(), v);
    if (ec != std::errc() || p != n.data() + n.size() || v < 0)
      Fail(l.number, "invalid size");
    return v;
  }

  int CurrentLine() const {
    return AtEnd() ? last_line_ + 1 : lines_[cur_].number;
  }

  [[noreturn]] static void Fail(int line, const std::string &why) {
    throw Error(ErrorKind::kParseError,
                "TextGrid line " + std::to_string(line) + ": " + why);
  }

 private:
  struct Line {
    std::string text;
    int number;
  };

  const Line &Next(std::string_view what) {
    if (AtEnd())
      Fail(last_line_ + 1,
           "unexpected end of input, expected '" + std::string(what) + "'");
    return lines_[cur_++];
  }

  static std::string_view Trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  }

  static bool StringClosed(const std::string &v) {
    // Count quotes after the opening one; odd count means closed.
    std::size_t quotes = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
      if (v[i] == '"') ++quotes;
    return quotes % 2 == 1 && v.back() == '"';
  }

  std::vector<Line> lines_;
  std::size_t cur_ = 0;
  int last_line_ = 0;
};

}  // namespace

AlignedWords ParseTextGrid(std::string_view text) {
  TextGridReader r(text);
  if (r.ExpectString("File type") != "ooTextFile")
    TextGridReader::Fail(1, "not an ooTextFile");
  if (r.ExpectString("Object class") != "TextGrid")
    TextGridReader::Fail(2, "object class is not TextGrid");
  r.ExpectNumber("xmin");
  r.ExpectNumber("xmax");
  r.ExpectLine("tiers? <exists>");
  const double num_tiers = r.ExpectNumber("size");
  r.ExpectLine("item []:");

  std::optional<AlignedWords> result;
  for (long i = 0; i < static_cast<long>(num_tiers); ++i) {
    r.ExpectLine("item [");
    const std::string cls = r.ExpectString("class");
    const std::string name = r.ExpectString("name");
    r.ExpectNumber("xmin");
    r.ExpectNumber("xmax");
    if (cls == "IntervalTier") {
      const long n = r.ExpectSize("intervals");
      AlignedWords tier;
      double prev_end = -1.0;
      for (long j = 0; j < n; ++j) {
        r.ExpectLine("intervals [");
        const int line = r.CurrentLine();
        const double t0 = r.ExpectNumber("xmin");
        const double t1 = r.ExpectNumber("xmax");
        std::string label = r.ExpectString("text");
        if (t1 < t0) TextGridReader::Fail(line, "interval ends before it starts");
        if (t0 < prev_end - 1e-9)
          TextGridReader::Fail(line, "intervals are not in time order");
        prev_end = t1;
        const auto first = label.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) {
          tier.silences.push_back({t0, t1});
          continue;
        }
        label = label.substr(first, label.find_last_not_of(" \t\r\n") - first + 1);
        WordSegment s;
        s.index = static_cast<int>(tier.words.size()) + 1;
        s.text = std::move(label);
        s.start_time = t0;
        s.end_time = t1;
        tier.words.push_back(std::move(s));
      }
      if (name == "words" && !result) result = std::move(tier);
    } else if (cls == "TextTier") {
      const long n = r.ExpectSize("points");
      for (long j = 0; j < n; ++j) {
        r.ExpectLine("points [");
        r.ExpectNumber("number");
        r.ExpectString("mark");
      }
    } else {
      TextGridReader::Fail(r.CurrentLine(), "unknown tier class '" + cls + "'");
    }
  }
  if (!result) throw Error(ErrorKind::kMissingTier, "words");
  return std::move(*result);
}

bool IsSilenceGap(const std::vector<WordSegment> &segments,
                  double total_duration, int location) {
  constexpr double kEps = 1e-6;
  const int n = static_cast<int>(segments.size());
  if (n == 0 || location < 1 || location > n + 1) return false;
  if (location == 1) return segments.front().start_time > kEps;
  if (location == n + 1)
    return total_duration - segments.back().end_time > kEps;
  return segments[location - 1].start_time - segments[location - 2].end_time >
         kEps;
}

std::vector<const NVCandidate *> FilterCandidates(const Corpus &corpus,
                                                  const Utterance &utterance,
                                                  MixingMode mode) {
  std::vector<const NVCandidate *> pool;
  for (const NVCandidate &nv : corpus.nv_candidates)
    if (mode == MixingMode::kCrossSpeaker || nv.speaker == utterance.speaker)
      pool.push_back(&nv);
  if (pool.empty())
    throw Error(ErrorKind::kNoCandidates,
                "no NV candidates for speaker '" + utterance.speaker + "'");
  return pool;
}

}  // namespace nvaug
