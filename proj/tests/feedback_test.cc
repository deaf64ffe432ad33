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

#include "refannot/feedback.h"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "refannot/corpus.h"
#include "refannot/error.h"
#include "test_util.h"

namespace refannot {
namespace {

using testing::BlocksSchema;
using testing::DataPath;
using testing::P;
using testing::R;

constexpr Language kEn = Language::kEnglish;

struct Pilot {
  Corpus corpus = LoadCorpus(DataPath("elicitation_pilot.json"));
  MappingTable lexicon = LoadLexicon(DataPath("gre3d3_en.tsv"));

  FeedbackVerdict Say(const std::string &text, const std::string &scene) const {
    AnnotationResult r =
        Annotate({Tokenize(text, kEn), kEn, scene}, lexicon, corpus.schema);
    return Check(r, *corpus.FindScene(scene), corpus.schema);
  }
};

const Pilot &Data() {
  static const Pilot pilot;
  return pilot;
}

TEST_CASE("two balls") {
  const Pilot &d = Data();
  FeedbackVerdict ball = d.Say("the ball", "two-balls");
  CHECK(ball.status == FeedbackStatus::kAmbiguous);
  CHECK(ball.matching_ids == std::set<std::string>{"b1", "b2"});
  CHECK(ball.unknown_tokens == std::vector<std::string>{"the"});

  FeedbackVerdict red = d.Say("the red ball", "two-balls");
  CHECK(red.status == FeedbackStatus::kUnique);
  CHECK(red.matching_ids == std::set<std::string>{"b1"});

  FeedbackVerdict green = d.Say("the green ball", "two-balls");
  CHECK(green.status == FeedbackStatus::kIllFormed);
  CHECK(green.false_properties == std::vector<Property>{P("colour", "green")});
  CHECK(green.matching_ids.empty());

  FeedbackVerdict both = d.Say("the red blue ball", "two-balls");
  CHECK(both.status == FeedbackStatus::kIllFormed);
  REQUIRE(both.conflicts.size() == 1);
  CHECK(both.conflicts[0].attribute == "colour");
  CHECK(both.conflicts[0].role == "target");
  std::vector<std::string> values = both.conflicts[0].values;
  std::sort(values.begin(), values.end());
  CHECK(values == std::vector<std::string>{"blue", "red"});

  FeedbackVerdict nothing = d.Say("that thing there", "two-balls");
  CHECK(nothing.status == FeedbackStatus::kEmpty);
  CHECK(nothing.unknown_tokens ==
        std::vector<std::string>{"that", "thing", "there"});
}

TEST_CASE("relations are read from the scene") {
  const Pilot &d = Data();
  // c1 and c3 are both small green cubes; only c1 is above c2.
  CHECK(d.Say("the small green cube", "stacked").status ==
        FeedbackStatus::kAmbiguous);
  FeedbackVerdict above = d.Say("the green cube on top of the large cube",
                                "stacked");
  CHECK(above.status == FeedbackStatus::kUnique);
  CHECK(above.matching_ids == std::set<std::string>{"c1"});
  // A landmark description that fits no object makes the relation false.
  FeedbackVerdict wrong = d.Say("the green cube above a red cube", "stacked");
  CHECK(wrong.status == FeedbackStatus::kIllFormed);
  CHECK(wrong.false_properties == std::vector<Property>{P("above", "lm")});

  // n1 near n2 (white cube) and n3 near n4 (red cube).
  CHECK(d.Say("the yellow ball near a cube", "near-pair").status ==
        FeedbackStatus::kAmbiguous);
  CHECK(d.Say("the yellow ball near the white cube", "near-pair").status ==
        FeedbackStatus::kUnique);
}

TEST_CASE("an empty result is always empty") {
  const Pilot &d = Data();
  for (const Scene &scene : d.corpus.scenes) {
    AnnotationResult empty;
    CHECK(Check(empty, scene, d.corpus.schema).status ==
          FeedbackStatus::kEmpty);
  }
  // Landmark properties alone say nothing about the target.
  AnnotationResult landmark_only;
  landmark_only.properties = {R("lm", "type", "cube")};
  CHECK(Check(landmark_only, *d.corpus.FindScene("stacked"), d.corpus.schema)
            .status == FeedbackStatus::kEmpty);
}

// Random scenes of at most ten objects with near/above links.
Scene RandomScene(std::mt19937_64 &rng, const DomainSchema &schema) {
  Scene scene;
  scene.id = "random";
  const size_t n = 1 + rng() % 10;
  for (size_t i = 0; i < n; ++i) {
    SceneObject object;
    object.id = "o" + std::to_string(i);
    for (const char *attribute : {"type", "colour", "size"}) {
      const AttributeDef *def = schema.FindAttribute(attribute);
      // Narrow value ranges keep ambiguity frequent.
      size_t range = std::min<size_t>(def->values.size(), 2);
      object.properties.insert({attribute, def->values[rng() % range]});
    }
    scene.objects.push_back(std::move(object));
  }
  for (SceneObject &object : scene.objects) {
    for (const char *relation : {"near", "above"}) {
      if (rng() % 3 == 0) {
        const SceneObject &other = scene.objects[rng() % n];
        if (other.id != object.id) {
          object.properties.insert({relation, other.id});
        }
      }
    }
  }
  scene.target_id = scene.objects[rng() % n].id;
  return scene;
}

RolePropertySet RandomDescription(std::mt19937_64 &rng,
                                  const DomainSchema &schema) {
  RolePropertySet set;
  for (const char *role : {"target", "lm"}) {
    for (const char *attribute : {"type", "colour", "size"}) {
      if (rng() % 2) {
        const AttributeDef *def = schema.FindAttribute(attribute);
        set.insert({role, {attribute, def->values[rng() % 2]}});
      }
    }
  }
  if (rng() % 2) {
    set.insert({"target", {rng() % 2 ? "near" : "above", "lm"}});
  } else {
    for (auto it = set.begin(); it != set.end();) {
      it = it->role == "lm" ? set.erase(it) : std::next(it);
    }
  }
  return set;
}

// Exhaustive filter: an object matches when it has every taxonomic target
// property and, for each relation, some other object carries every landmark
// property and is named by that relation on the candidate.
std::set<std::string> OracleMatches(const RolePropertySet &description,
                                    const Scene &scene) {
  PropertySet taxonomic, relations, landmark;
  for (const RoleProperty &rp : description) {
    const bool relational =
        rp.property.attribute == "near" || rp.property.attribute == "above";
    if (rp.role == "lm") {
      landmark.insert(rp.property);
    } else if (relational) {
      relations.insert(rp.property);
    } else {
      taxonomic.insert(rp.property);
    }
  }
  std::set<std::string> ids;
  for (const SceneObject &candidate : scene.objects) {
    bool ok = std::includes(candidate.properties.begin(),
                            candidate.properties.end(), taxonomic.begin(),
                            taxonomic.end());
    for (const Property &relation : relations) {
      bool found = false;
      for (const SceneObject &other : scene.objects) {
        if (other.id == candidate.id) continue;
        bool linked =
            candidate.properties.contains({relation.attribute, other.id});
        bool fits = std::includes(other.properties.begin(),
                                  other.properties.end(), landmark.begin(),
                                  landmark.end());
        found = found || (linked && fits);
      }
      ok = ok && found;
    }
    if (ok) ids.insert(candidate.id);
  }
  return ids;
}

TEST_CASE("matching equals the exhaustive filter") {
  DomainSchema schema = BlocksSchema();
  std::mt19937_64 rng(17);
  size_t unique = 0, ambiguous = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    Scene scene = RandomScene(rng, schema);
    REQUIRE(ValidateScene(scene, schema).empty());
    AnnotationResult result;
    result.properties = RandomDescription(rng, schema);
    FeedbackVerdict verdict = Check(result, scene, schema);
    CHECK(verdict.matching_ids == OracleMatches(result.properties, scene));

    // Status follows from the matches.
    if (verdict.status == FeedbackStatus::kUnique) {
      ++unique;
      CHECK(verdict.matching_ids == std::set<std::string>{scene.target_id});
    } else if (verdict.status == FeedbackStatus::kAmbiguous) {
      ++ambiguous;
      CHECK(verdict.matching_ids.contains(scene.target_id));
      CHECK(verdict.matching_ids.size() > 1);
    } else if (verdict.status == FeedbackStatus::kIllFormed) {
      CHECK((!verdict.false_properties.empty() || !verdict.conflicts.empty()));
    } else {
      CHECK(PropertiesOf(result.properties, "target").empty());
    }
  }
  CHECK(unique > 100);
  CHECK(ambiguous > 100);
}

TEST_CASE("adding a true property never grows the match set") {
  DomainSchema schema = BlocksSchema();
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 1000; ++trial) {
    Scene scene = RandomScene(rng, schema);
    AnnotationResult before;
    before.properties = RandomDescription(rng, schema);
    const SceneObject *target = scene.Target();
    std::vector<Property> taxonomic;
    for (const Property &p : target->properties) {
      if (p.attribute != "near" && p.attribute != "above") {
        taxonomic.push_back(p);
      }
    }
    AnnotationResult after = before;
    after.properties.insert({"target", taxonomic[rng() % taxonomic.size()]});
    std::set<std::string> a = Check(before, scene, schema).matching_ids;
    std::set<std::string> b = Check(after, scene, schema).matching_ids;
    CHECK(std::includes(a.begin(), a.end(), b.begin(), b.end()));
  }
}

}  // namespace
}  // namespace refannot
