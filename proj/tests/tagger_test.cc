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

#include "refannot/tagger.h"

#include "doctest.h"
#include "refannot/corpus.h"
#include "refannot/error.h"
#include "test_util.h"

namespace refannot {
namespace {

using testing::DataPath;
using testing::P;
using testing::TempDir;

constexpr Language kEn = Language::kEnglish;
constexpr Language kPt = Language::kPortuguese;

LabeledExample X(std::vector<std::string> tokens, std::vector<Label> labels,
                 Language language = kEn) {
  return {std::move(tokens), std::move(labels), language};
}

TEST_CASE("single observation") {
  std::vector<LabeledExample> examples = {
      X({"red", "ball"}, {P("colour", "red"), P("type", "ball")})};
  TaggerModel model = TaggerModel::Train(examples);
  CHECK(model.LabelOf("red", kEn) == P("colour", "red"));
  CHECK(model.LabelOf("ball", kEn) == P("type", "ball"));
  CHECK_FALSE(model.LabelOf("red", kPt));

  std::vector<std::string> tokens = {"red", "ball"};
  AnnotationResult r = model.Tag(tokens, kEn);
  CHECK(Flatten(r.properties) ==
        PropertySet{P("colour", "red"), P("type", "ball")});
  REQUIRE(r.segments.size() == 1);
  CHECK(r.segments[0].role == "target");
  CHECK_FALSE(r.segments[0].trigger);

  std::vector<std::string> unseen = {"unseen"};
  AnnotationResult empty = model.Tag(unseen, kEn);
  CHECK(empty.properties.empty());
  CHECK(empty.discarded == std::vector<DiscardedToken>{{"unseen", 0}});

  std::vector<std::string> repeated = {"red", "red", "ball"};
  CHECK(Flatten(model.Tag(repeated, kEn).properties) ==
        PropertySet{P("colour", "red"), P("type", "ball")});
}

TEST_CASE("majority label wins") {
  std::vector<LabeledExample> examples = {
      X({"dark", "man"}, {P("hair.colour", "dark"), P("type", "person")}),
      X({"dark", "guy"}, {P("hair.colour", "dark"), P("type", "person")}),
      X({"dark", "beard"}, {P("beard.colour", "dark"), std::nullopt}),
  };
  TaggerModel model = TaggerModel::Train(examples);
  CHECK(model.LabelOf("dark", kEn) == P("hair.colour", "dark"));
  CHECK(model.counts().at({kEn, "dark"}).at(P("hair.colour", "dark")) == 2);
  CHECK_FALSE(model.LabelOf("beard", kEn));
}

TEST_CASE("ties prefer the null label") {
  std::vector<LabeledExample> examples = {
      X({"the"}, {std::nullopt}),
      X({"the"}, {P("type", "ball")}),
  };
  CHECK_FALSE(TaggerModel::Train(examples).LabelOf("the", kEn));
}

TEST_CASE("training errors") {
  std::vector<LabeledExample> none;
  CHECK_THROWS_AS(TaggerModel::Train(none), Error);
  std::vector<LabeledExample> bad = {X({"red", "ball"}, {P("colour", "red")})};
  try {
    TaggerModel::Train(bad);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("labels derived from a lexicon") {
  DomainSchema schema = LoadSchema(DataPath("gre3d3_mini.json"));
  MappingTable lexicon = LoadLexicon(DataPath("gre3d3_en.tsv"));
  std::vector<std::string> tokens =
      Tokenize("the red ball on top of a cube", kEn);
  LabeledExample example = LabelWithLexicon(tokens, kEn, lexicon, schema);
  REQUIRE(example.labels.size() == tokens.size());
  CHECK_FALSE(example.labels[0]);
  CHECK(example.labels[1] == P("colour", "red"));
  CHECK(example.labels[2] == P("type", "ball"));
  CHECK(example.labels[3] == P("above", "lm"));
  CHECK(example.labels[4] == P("above", "lm"));
  CHECK(example.labels[5] == P("above", "lm"));
  CHECK_FALSE(example.labels[6]);
  CHECK(example.labels[7] == P("type", "cube"));

  // The tagger flattens the landmark onto the target.
  std::vector<LabeledExample> examples = {example};
  AnnotationResult r = TaggerModel::Train(examples).Tag(tokens, kEn);
  CHECK(PropertiesOf(r.properties, "target") ==
        PropertySet{P("colour", "red"), P("type", "ball"), P("above", "lm"),
                    P("type", "cube")});
}

TEST_CASE("model save and load") {
  TempDir dir;
  std::vector<LabeledExample> examples = {
      X({"red", "ball"}, {P("colour", "red"), P("type", "ball")}),
      X({"bola", "vermelha"}, {P("type", "ball"), P("colour", "red")}, kPt),
      X({"the", "ball"}, {std::nullopt, P("type", "ball")}),
  };
  TaggerModel model = TaggerModel::Train(examples);
  SaveTaggerModel(model, dir.File("model.json"));
  TaggerModel loaded = LoadTaggerModel(dir.File("model.json"));
  CHECK(loaded.counts() == model.counts());
  CHECK(loaded.LabelOf("vermelha", kPt) == P("colour", "red"));
  CHECK_THROWS_AS(LoadTaggerModel(dir.File("missing.json")), Error);
}

}  // namespace
}  // namespace refannot
