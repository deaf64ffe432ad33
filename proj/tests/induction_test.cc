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

#include <random>

#include "doctest.h"
#include "refannot/error.h"
#include "refannot/evaluation.h"
#include "refannot/lexicon.h"
#include "refannot/parser.h"
#include "test_util.h"

namespace refannot {
namespace {

using testing::BlocksSchema;
using testing::P;

constexpr Language kEn = Language::kEnglish;
constexpr Language kPt = Language::kPortuguese;

TrainingDescription T(const std::string &text, PropertySet gold,
                      Language language = kEn) {
  return {Tokenize(text, language), std::move(gold), language};
}

DomainSchema FurnitureSchema() {
  DomainSchema schema;
  schema.domain = "furniture";
  schema.attributes = {
      {"type", AttributeKind::kTaxonomic, {"chair", "couch", "desk"}},
      {"colour", AttributeKind::kTaxonomic, {"blue", "green", "red"}},
      {"size", AttributeKind::kTaxonomic, {"large", "small"}},
  };
  return schema;
}

DomainSchema PeopleSchema() {
  DomainSchema schema;
  schema.domain = "people";
  schema.attributes = {
      {"type", AttributeKind::kTaxonomic, {"person"}},
      {"hair.colour", AttributeKind::kTaxonomic, {"dark", "light"}},
      {"beard.colour", AttributeKind::kTaxonomic, {"dark", "light"}},
  };
  return schema;
}

TEST_CASE("the red couch") {
  std::vector<TrainingDescription> training = {
      T("the red couch", {P("type", "couch"), P("colour", "red")})};
  MappingTable m = InduceLexicon(training, FurnitureSchema());
  CHECK(m.LookupWord("couch", kEn) == P("type", "couch"));
  CHECK(m.LookupWord("red", kEn) == P("colour", "red"));
  CHECK_FALSE(m.LookupWord("the", kEn));
  CHECK(m.size() == 2);
  CHECK(m.IsNoun("couch", kEn));
  CHECK_FALSE(m.IsNoun("red", kEn));
}

TEST_CASE("head-dependent words become pair entries") {
  std::vector<TrainingDescription> training = {
      T("dark man", {P("hair.colour", "dark"), P("type", "person")}),
      T("dark beard", {P("beard.colour", "dark")}),
  };
  MappingTable m = InduceLexicon(training, PeopleSchema());
  CHECK(m.LookupPair("dark", "man", kEn) == P("hair.colour", "dark"));
  CHECK(m.LookupPair("dark", "beard", kEn) == P("beard.colour", "dark"));
  CHECK_FALSE(m.LookupWord("dark", kEn));
  CHECK(m.LookupWord("man", kEn) == P("type", "person"));

  // The induced table disambiguates both descriptions.
  DomainSchema schema = PeopleSchema();
  AnnotationResult a = Annotate({Tokenize("dark man", kEn), kEn, ""}, m, schema);
  CHECK(Flatten(a.properties) ==
        PropertySet{P("hair.colour", "dark"), P("type", "person")});
  AnnotationResult b =
      Annotate({Tokenize("man with dark beard", kEn), kEn, ""}, m, schema);
  CHECK(Flatten(b.properties) ==
        PropertySet{P("beard.colour", "dark"), P("type", "person")});
}

TEST_CASE("invalid training input") {
  std::vector<TrainingDescription> none;
  try {
    InduceLexicon(none, FurnitureSchema());
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  std::vector<TrainingDescription> illegal = {
      T("the purple couch", {P("colour", "purple")})};
  try {
    InduceLexicon(illegal, FurnitureSchema());
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kSchemaViolation);
  }
}

TEST_CASE("strict majority rule") {
  DomainSchema schema = BlocksSchema();
  std::vector<TrainingDescription> three = {
      T("big ball", {P("size", "large"), P("type", "ball")}),
      T("big box", {P("size", "large"), P("type", "box")}),
      T("big cube", {P("type", "cube")}),
  };
  CHECK(InduceLexicon(three, schema).LookupWord("big", kEn) == P("size", "large"));

  std::vector<TrainingDescription> four = three;
  four.push_back(T("big wall", {P("type", "wall")}));
  CHECK_FALSE(InduceLexicon(four, schema).LookupWord("big", kEn));

  // Items with empty gold are ignored altogether.
  std::vector<TrainingDescription> with_empty = three;
  with_empty.push_back(T("big thing", {}));
  with_empty.push_back(T("big thing", {}));
  CHECK(InduceLexicon(with_empty, schema).LookupWord("big", kEn) ==
        P("size", "large"));
}

TEST_CASE("ties go to the smallest property") {
  std::vector<TrainingDescription> training = {
      T("huge", {P("size", "large"), P("colour", "red")})};
  CHECK(InduceLexicon(training, BlocksSchema()).LookupWord("huge", kEn) ==
        P("colour", "red"));
}

TEST_CASE("multi-word units") {
  std::vector<TrainingDescription> training = {
      T("the ball on top of the cube",
        {P("type", "ball"), P("above", "lm"), P("type", "cube")}),
      T("a box on top of a wall",
        {P("type", "box"), P("above", "lm"), P("type", "wall")}),
  };
  MappingTable m = InduceLexicon(training, BlocksSchema());
  std::vector<std::string> phrase = {"on", "top", "of"};
  auto match = m.LookupMultiword(phrase, 0, kEn);
  REQUIRE(match);
  CHECK(match->property == P("above", "lm"));
  CHECK(match->length == 3);
}

TEST_CASE("relational values are canonicalized") {
  DomainSchema schema = BlocksSchema();
  schema.landmark_roles = {"lm", "lm2"};
  std::vector<TrainingDescription> training = {
      T("ball by cube", {P("type", "ball"), P("near", "lm"), P("type", "cube")}),
      T("ball by cube by wall", {P("type", "ball"), P("type", "cube"),
                                 P("type", "wall"), P("near", "lm"),
                                 P("near", "lm2")}),
  };
  MappingTable m = InduceLexicon(training, schema);
  CHECK(m.LookupWord("by", kEn) == P("near", "lm"));
  // The relation name itself anchors.
  std::vector<TrainingDescription> named = {
      T("ball near cube", {P("type", "ball"), P("near", "lm"), P("type", "cube")})};
  CHECK(InduceLexicon(named, schema).LookupWord("near", kEn) == P("near", "lm"));
}

TEST_CASE("languages are induced separately") {
  std::vector<TrainingDescription> training = {
      T("bola vermelha", {P("type", "ball"), P("colour", "red")}, kPt),
      T("bola azul", {P("type", "ball"), P("colour", "blue")}, kPt),
      T("the red ball", {P("type", "ball"), P("colour", "red")}),
  };
  MappingTable m = InduceLexicon(training, BlocksSchema());
  CHECK(m.LookupWord("vermelha", kPt) == P("colour", "red"));
  CHECK(m.LookupWord("azul", kPt) == P("colour", "blue"));
  CHECK(m.LookupWord("bola", kPt) == P("type", "ball"));
  CHECK_FALSE(m.LookupWord("bola", kEn));
  CHECK(m.LookupWord("ball", kEn) == P("type", "ball"));
}

// Random training sets over a vocabulary of synonyms and fillers.
std::vector<TrainingDescription> RandomTraining(std::mt19937_64 &rng) {
  const std::vector<std::pair<std::string, Property>> types = {
      {"sphere", P("type", "ball")}, {"orb", P("type", "ball")},
      {"block", P("type", "cube")}, {"crate", P("type", "box")}};
  const std::vector<std::pair<std::string, Property>> colours = {
      {"crimson", P("colour", "red")}, {"scarlet", P("colour", "red")},
      {"azure", P("colour", "blue")}, {"emerald", P("colour", "green")}};
  const std::vector<std::pair<std::string, Property>> sizes = {
      {"huge", P("size", "large")}, {"tiny", P("size", "small")}};
  const std::vector<std::string> fillers = {"the", "a", "that", "one"};
  auto pick = [&](const auto &list) { return list[rng() % list.size()]; };

  std::vector<TrainingDescription> training;
  const size_t n = 30 + rng() % 40;
  for (size_t k = 0; k < n; ++k) {
    std::string text = pick(fillers);
    PropertySet gold;
    if (rng() % 2) {
      auto [w, p] = pick(sizes);
      text += " " + w;
      gold.insert(p);
    }
    if (rng() % 3) {
      auto [w, p] = pick(colours);
      text += " " + w;
      gold.insert(p);
    }
    auto [w, p] = pick(types);
    text += " " + w;
    gold.insert(p);
    training.push_back(T(text, gold));
  }
  return training;
}

TEST_CASE("induction properties over random training sets") {
  DomainSchema schema = BlocksSchema();
  std::mt19937_64 rng(20260101);
  size_t one_to_one = 0, total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<TrainingDescription> training = RandomTraining(rng);
    MappingTable m = InduceLexicon(training, schema);

    // Deterministic.
    CHECK(FormatLexiconTsv(InduceLexicon(training, schema)) ==
          FormatLexiconTsv(m));
    // Only legal properties.
    CHECK(m.Validate(schema).empty());

    // One-to-one items are recovered exactly.
    for (const TrainingDescription &item : training) {
      ++total;
      PropertySet mapped;
      size_t mapped_tokens = 0;
      for (const std::string &token : item.tokens) {
        if (auto p = m.LookupWord(token, kEn)) {
          ++mapped_tokens;
          mapped.insert(*p);
        }
      }
      if (mapped_tokens != item.gold.size() || mapped != item.gold) continue;
      ++one_to_one;
      AnnotationResult result = Annotate({item.tokens, kEn, ""}, m, schema);
      CHECK(Dice(Flatten(result.properties), item.gold) == 1.0);
    }
  }
  // The property must not hold vacuously. Fillers that happen to co-occur
  // with a majority property keep some items out of the one-to-one set.
  CHECK(one_to_one * 4 > total);
}

}  // namespace
}  // namespace refannot
