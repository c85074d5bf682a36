// tests/corpus_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nvaug/corpus.h"
#include "nvaug/errors.h"
#include "support/check.h"
#include "support/synthetic.h"

using namespace nvaug;
using nvaug::testing::KindOf;
using nvaug::testing::MessageOf;

namespace {

const char kTwoUtterances[] =
    R"({"kind":"header","embedding_dim":3,"num_codebooks":2,"vocab_size":16,"frame_rate":10,"speakers":["p001","p002"]}
{"kind":"utt","id":"a","speaker":"p001","emotion":"Neutral","words":[{"w":"hello","t0":0.0,"t1":0.4,"a":0.5,"v":0.5,"d":0.5},{"w":"there","t0":0.5,"t1":0.9,"a":0.6,"v":0.4,"d":0.5}],"embedding":[1,0,0],"tokens":[[1,2,3,4,5,6,7,8,9],[9,8,7,6,5,4,3,2,1]]}
{"kind":"utt","id":"b","speaker":"p002","emotion":"happy","words":[{"w":"yes","t0":0.1,"t1":0.3,"a":0.7,"v":0.8,"d":0.6}],"embedding":[0,1,0],"tokens":[[0,0,0],[1,1,1]]}
{"kind":"nv","id":"nv1","speaker":"p001","type":"Laughter","a":0.8,"v":0.9,"d":0.5,"embedding":[0,0,1],"tokens":[[3,3],[4,4]]}
)";

Corpus Parse(const std::string &text) {
  std::istringstream in(text);
  return ParseManifest(in);
}

std::string Replace(std::string s, const std::string &from, const std::string &to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

// Naive oracle: every "text = " line after the words tier's name line is one
// interval; non-blank labels are words.
std::vector<std::string> ScanWords(const std::string &tg) {
  std::istringstream in(tg);
  std::string line;
  bool in_words = false;
  std::vector<std::string> out;
  while (std::getline(in, line)) {
    if (line.find("name = ") != std::string::npos)
      in_words = line.find("\"words\"") != std::string::npos;
    if (!in_words) continue;
    const auto p = line.find("text = \"");
    if (p == std::string::npos) continue;
    std::string body = line.substr(p + 8);
    body = body.substr(0, body.rfind('"'));
    std::string label;
    for (std::size_t i = 0; i < body.size(); ++i) {
      label += body[i];
      if (body[i] == '"') ++i;
    }
    if (label.find_first_not_of(' ') != std::string::npos) out.push_back(label);
  }
  return out;
}

}  // namespace

TEST_CASE("manifest: well-formed fixture") {
  const Corpus c = Parse(kTwoUtterances);
  REQUIRE(c.utterances.size() == 2);
  CHECK(c.nv_candidates.size() == 1);
  CHECK(c.nv_vocabulary == DefaultNVVocabulary());
  CHECK(c.nv_vocabulary.size() == 15);
  CHECK(!c.neutral_center);
  CHECK(c.utterances[0].segments[1].index == 2);
  CHECK(c.utterances[0].segments[1].text == "there");
  CHECK(c.utterances[0].tokens.NumFrames() == 9);
  CHECK(c.utterances[0].Transcript() == std::vector<std::string>{"hello", "there"});
  CHECK(c.nv_candidates[0].attrs == EmotionAttr{0.8, 0.9, 0.5});
  CHECK_NOTHROW(ValidateCorpus(c));
}

TEST_CASE("manifest: invariant violations") {
  SUBCASE("overlapping word segments name the record") {
    const std::string bad = Replace(kTwoUtterances, R"("t0":0.5,"t1":0.9)",
                                    R"("t0":0.3,"t1":0.9)");
    CHECK(KindOf([&] { Parse(bad); }) == ErrorKind::kInvariantViolation);
    CHECK(MessageOf([&] { Parse(bad); }).find("'a'") != std::string::npos);
  }
  SUBCASE("embedding dimension") {
    const std::string bad = Replace(kTwoUtterances, R"("embedding":[0,1,0])",
                                    R"("embedding":[0,1])");
    CHECK(KindOf([&] { Parse(bad); }) == ErrorKind::kSchemaError);
    const std::string msg = MessageOf([&] { Parse(bad); });
    CHECK(msg.find("embedding") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
  }
  SUBCASE("token outside the vocabulary") {
    const std::string bad = Replace(kTwoUtterances, "[0,0,0]", "[0,16,0]");
    CHECK(KindOf([&] { Parse(bad); }) == ErrorKind::kInvariantViolation);
  }
  SUBCASE("ragged codebooks") {
    const std::string bad = Replace(kTwoUtterances, "[1,1,1]", "[1,1]");
    CHECK(KindOf([&] { Parse(bad); }) == ErrorKind::kInvariantViolation);
  }
  SUBCASE("unknown NV type") {
    const std::string bad = Replace(kTwoUtterances, "Laughter", "Yodel");
    CHECK(KindOf([&] { Parse(bad); }) == ErrorKind::kInvariantViolation);
  }
  SUBCASE("undeclared speaker") {
    const std::string bad = Replace(kTwoUtterances, R"("speaker":"p002")",
                                    R"("speaker":"p003")");
    CHECK(KindOf([&] { Parse(bad); }) == ErrorKind::kInvariantViolation);
  }
  SUBCASE("duplicate id") {
    const std::string bad = Replace(kTwoUtterances, R"("id":"b")", R"("id":"a")");
    CHECK(KindOf([&] { Parse(bad); }) == ErrorKind::kInvariantViolation);
  }
  SUBCASE("broken JSON reports the line") {
    const std::string bad = Replace(kTwoUtterances, R"({"kind":"nv")", R"({"kind":"nv",)");
    CHECK(KindOf([&] { Parse(bad); }) == ErrorKind::kParseError);
    CHECK(MessageOf([&] { Parse(bad); }).find("line 4") != std::string::npos);
  }
  SUBCASE("missing header") {
    const std::string text = kTwoUtterances;
    CHECK(KindOf([&] { Parse(text.substr(text.find('\n') + 1)); }) ==
          ErrorKind::kSchemaError);
  }
}

TEST_CASE("manifest: serialization is a fixed point") {
  const Corpus c = Parse(kTwoUtterances);
  const std::string once = SerializeManifest(c);
  const std::string twice = SerializeManifest(Parse(once));
  CHECK(once == twice);

  testing::SyntheticSpec spec;
  spec.num_utterances = 40;
  const Corpus big = testing::MakeCorpus(spec);
  ValidateCorpus(big);
  const std::string s1 = SerializeManifest(big);
  const Corpus back = Parse(s1);
  CHECK(SerializeManifest(back) == s1);
  REQUIRE(back.neutral_center);
  CHECK(*back.neutral_center == *big.neutral_center);
  CHECK(back.utterances.size() == 40);
  CHECK(back.utterances[7].tokens == big.utterances[7].tokens);
  CHECK(back.nv_candidates[3].tokens == big.nv_candidates[3].tokens);
}

TEST_CASE("manifest: NV flag on word segments") {
  const std::string text = Replace(kTwoUtterances, R"("w":"yes",)", R"("w":"[laugh]","nv":true,)");
  const Corpus c = Parse(text);
  CHECK(c.utterances[1].segments[0].is_nv);
  CHECK(!c.utterances[0].segments[0].is_nv);
  CHECK(SerializeManifest(Parse(SerializeManifest(c))) == SerializeManifest(c));
}

TEST_CASE("textgrid: silence skipped") {
  const std::string tg = testing::MakeTextGrid({{0.0, 0.5, "hi"}, {0.5, 0.9, ""}});
  const AlignedWords w = ParseTextGrid(tg);
  REQUIRE(w.words.size() == 1);
  CHECK(w.words[0].text == "hi");
  CHECK(w.words[0].start_time == 0.0);
  CHECK(w.words[0].end_time == 0.5);
  CHECK(w.words[0].index == 1);
  REQUIRE(w.silences.size() == 1);
  CHECK(w.silences[0].start_time == 0.5);
}

TEST_CASE("textgrid: labeled intervals in time order") {
  const std::string tg = testing::MakeTextGrid(
      {{0.0, 0.3, "one"}, {0.3, 0.7, "two"}, {0.7, 1.2, "three"}}, true);
  const AlignedWords w = ParseTextGrid(tg);
  REQUIRE(w.words.size() == 3);
  CHECK(w.words[0].text == "one");
  CHECK(w.words[2].text == "three");
  CHECK(w.words[2].index == 3);
  CHECK(w.words[1].start_time < w.words[2].start_time);
}

TEST_CASE("textgrid: errors") {
  const std::string good = testing::MakeTextGrid({{0.0, 0.5, "hi"}});
  SUBCASE("missing header xmax") {
    const std::string bad = Replace(good, "xmax = 0.5 \ntiers?", "tiers?");
    CHECK(KindOf([&] { ParseTextGrid(bad); }) == ErrorKind::kParseError);
    CHECK(MessageOf([&] { ParseTextGrid(bad); }).find("line 5") != std::string::npos);
  }
  SUBCASE("no words tier") {
    const std::string bad = Replace(good, "\"words\"", "\"phones\"");
    CHECK(KindOf([&] { ParseTextGrid(bad); }) == ErrorKind::kMissingTier);
  }
  SUBCASE("not a TextGrid") {
    CHECK(KindOf([] { ParseTextGrid("hello"); }) == ErrorKind::kParseError);
  }
}

TEST_CASE("textgrid: 20 generated fixtures against a line scan") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> count(0, 15);
  std::bernoulli_distribution blank(0.3), quote(0.1), phones(0.5);
  for (int f = 0; f < 20; ++f) {
    std::vector<testing::TextGridInterval> iv;
    double t = 0.0;
    const int n = count(gen) + 1;
    for (int i = 0; i < n; ++i) {
      std::string label = blank(gen) ? "" : "w" + std::to_string(f) + "_" + std::to_string(i);
      if (!label.empty() && quote(gen)) label += "\"q\"";
      iv.push_back({t, t + 0.25, label});
      t += 0.25;
    }
    const std::string tg = testing::MakeTextGrid(iv, phones(gen));
    const AlignedWords w = ParseTextGrid(tg);
    const std::vector<std::string> oracle = ScanWords(tg);
    REQUIRE(w.words.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      CHECK(w.words[i].text == oracle[i]);
      CHECK(w.words[i].index == static_cast<int>(i) + 1);
      if (i > 0) CHECK(w.words[i - 1].end_time <= w.words[i].start_time);
    }
    CHECK(w.words.size() + w.silences.size() == iv.size());
  }
}

TEST_CASE("silence gaps") {
  std::vector<WordSegment> s(2);
  s[0].start_time = 0.2;
  s[0].end_time = 0.5;
  s[1].start_time = 0.5;
  s[1].end_time = 1.0;
  CHECK(IsSilenceGap(s, 1.2, 1));
  CHECK(!IsSilenceGap(s, 1.2, 2));
  CHECK(IsSilenceGap(s, 1.2, 3));
  CHECK(!IsSilenceGap(s, 1.0, 3));
  CHECK(!IsSilenceGap(s, 1.2, 4));
}

TEST_CASE("candidate filtering") {
  Corpus c;
  c.speakers = {"p001", "p002", "p009"};
  for (int i = 0; i < 5; ++i) {
    NVCandidate nv;
    nv.id = "nv" + std::to_string(i);
    nv.speaker = i < 3 ? "p001" : "p002";
    c.nv_candidates.push_back(nv);
  }
  Utterance u;
  u.speaker = "p001";
  const auto same = FilterCandidates(c, u, MixingMode::kSameSpeaker);
  REQUIRE(same.size() == 3);
  for (const NVCandidate *nv : same) CHECK(nv->speaker == "p001");
  CHECK(FilterCandidates(c, u, MixingMode::kCrossSpeaker).size() == 5);
  u.speaker = "p009";
  CHECK(KindOf([&] { FilterCandidates(c, u, MixingMode::kSameSpeaker); }) ==
        ErrorKind::kNoCandidates);
}

TEST_CASE("neutral labels") {
  CHECK(IsNeutralLabel("neutral"));
  CHECK(IsNeutralLabel("NEUTRAL"));
  CHECK(!IsNeutralLabel("neutrality"));
  CHECK(!IsNeutralLabel("happy"));
  const Corpus c = Parse(kTwoUtterances);
  const auto pts = NeutralPseudoLabels(c);
  REQUIRE(pts.size() == 2);
  CHECK(pts[1] == EmotionAttr{0.6, 0.4, 0.5});
}
