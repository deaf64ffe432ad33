// Copyright 2026 The refannot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "refannot/pipeline.h"

#include <algorithm>

#include "doctest.h"
#include "refannot/error.h"
#include "refannot/fileutil.h"
#include "refannot/serialization.h"
#include "test_util.h"

namespace refannot {
namespace {

using testing::DataPath;
using testing::P;
using testing::TempDir;

Corpus Mini() { return LoadCorpus(DataPath("gre3d3_mini.json")); }

MappingTable Bilingual() {
  MappingTable en = LoadLexicon(DataPath("gre3d3_en.tsv"));
  MappingTable pt = LoadLexicon(DataPath("gre3d3_pt.tsv"));
  std::vector<LexicalEntry> entries = en.entries();
  entries.insert(entries.end(), pt.entries().begin(), pt.entries().end());
  return MappingTable(entries);
}

TEST_CASE("hand lexicon annotates the fixture exactly") {
  Corpus corpus = Mini();
  AnnotationSet set = AnnotateCorpus(corpus, Bilingual());
  CHECK(set.method == kHeuristicMethod);
  CHECK(set.corpus == corpus.name);
  REQUIRE(set.items.size() == corpus.items.size());
  for (size_t i = 0; i < set.items.size(); ++i) {
    CHECK(set.items[i].id == corpus.items[i].id);
  }
  EvalReport report = EvaluateAnnotations(set, corpus);
  CHECK(report.role_aware);
  CHECK(report.mean_dice == 1.0);
  CHECK(report.accuracy == 1.0);
}

TEST_CASE("inconsistent lexicons are rejected") {
  Corpus corpus = Mini();
  MappingTable furniture = LoadLexicon(DataPath("furniture_en.tsv"));
  try {
    AnnotateCorpus(corpus, furniture);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kSchemaViolation);
  }
}

TEST_CASE("the baseline is structure-blind") {
  Corpus corpus = Mini();
  TaggerModel tagger = TrainTagger(corpus, nullptr);
  AnnotationSet set = TagCorpus(corpus, tagger);
  CHECK(set.method == kBaselineMethod);
  for (const AnnotatedItem &item : set.items) {
    for (const RoleProperty &rp : item.result.properties) {
      CHECK(rp.role == "target");
    }
  }
  // Landmark gold can never be matched role-aware, so relational items lose.
  EvalReport report = EvaluateAnnotations(set, corpus);
  CHECK(report.accuracy < 1.0);
}

TEST_CASE("training data and induction") {
  Corpus corpus = Mini();
  std::vector<TrainingDescription> training = TrainingData(corpus);
  REQUIRE(training.size() == corpus.items.size());
  CHECK(training[0].tokens == Tokenize(corpus.items[0].text,
                                       corpus.items[0].language));
  CHECK(training[0].gold == Flatten(corpus.items[0].gold));
  MappingTable induced = InduceFromCorpus(corpus);
  CHECK(induced.size() > 0);
  CHECK(induced.Validate(corpus.schema).empty());
  CHECK(induced.LookupWord("ball", Language::kEnglish) == P("type", "ball"));
}

TEST_CASE("token labels take precedence") {
  Corpus corpus = Mini();
  for (CorpusItem &item : corpus.items) {
    item.token_labels = std::vector<Label>(
        Tokenize(item.text, item.language).size(), std::nullopt);
  }
  // Every label is null, so the tagger learns nothing.
  TaggerModel tagger = TrainTagger(corpus, nullptr);
  AnnotationSet set = TagCorpus(corpus, tagger);
  for (const AnnotatedItem &item : set.items) {
    CHECK(item.result.properties.empty());
  }
}

TEST_CASE("mismatched annotation sets are rejected") {
  Corpus corpus = Mini();
  AnnotationSet set = AnnotateCorpus(corpus, Bilingual());
  SUBCASE("missing item") {
    set.items.pop_back();
    CHECK_THROWS_AS(EvaluateAnnotations(set, corpus), Error);
  }
  SUBCASE("duplicate item") {
    set.items.push_back(set.items.front());
    CHECK_THROWS_AS(EvaluateAnnotations(set, corpus), Error);
  }
  SUBCASE("unknown item") {
    set.items.back().id = "stranger";
    CHECK_THROWS_AS(EvaluateAnnotations(set, corpus), Error);
  }
}

TEST_CASE("evaluation follows corpus order") {
  Corpus corpus = Mini();
  AnnotationSet set = AnnotateCorpus(corpus, Bilingual());
  std::reverse(set.items.begin(), set.items.end());
  EvalReport report = EvaluateAnnotations(set, corpus);
  CHECK(report.items.front().id == corpus.items.front().id);
}

TEST_CASE("annotation files round-trip") {
  TempDir dir;
  Corpus corpus = Mini();
  AnnotationSet set = AnnotateCorpus(corpus, Bilingual());
  SaveAnnotations(set, dir.File("hyp.json"));
  AnnotationSet back = LoadAnnotations(dir.File("hyp.json"));
  CHECK(back.method == set.method);
  CHECK(back.corpus == set.corpus);
  REQUIRE(back.items.size() == set.items.size());
  for (size_t i = 0; i < set.items.size(); ++i) {
    CHECK(back.items[i].id == set.items[i].id);
    CHECK(ToJson(back.items[i].result) == ToJson(set.items[i].result));
  }
  CHECK(SerializeAnnotations(back) == SerializeAnnotations(set));
  CHECK_THROWS_AS(ParseAnnotations("{}", "empty"), Error);
  CHECK_THROWS_AS(LoadAnnotations(dir.File("missing.json")), Error);
}

}  // namespace
}  // namespace refannot
