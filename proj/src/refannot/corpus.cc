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

#include "refannot/corpus.h"

#include <cmath>
#include <random>
#include <set>

#include "refannot/error.h"
#include "refannot/fileutil.h"
#include "refannot/parser.h"
#include "refannot/serialization.h"

namespace refannot {

namespace {

const char kCorpusFormat[] = "refannot-corpus/1";
const char kSchemaFormat[] = "refannot-schema/1";

// Unbiased draw from [0, bound).
uint64_t Bounded(std::mt19937_64 &rng, uint64_t bound) {
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Json LabelsToJson(const std::vector<Label> &labels) {
  Json list = Json::array();
  for (const Label &label : labels) {
    list.push_back(label ? ToJson(*label) : Json(nullptr));
  }
  return list;
}

std::vector<Label> LabelsFromJson(const Json &j) {
  std::vector<Label> labels;
  for (const Json &label : j) {
    if (label.is_null()) {
      labels.push_back(std::nullopt);
    } else {
      labels.push_back(PropertyFromJson(label));
    }
  }
  return labels;
}

}  // namespace

const Scene *Corpus::FindScene(std::string_view id) const {
  for (const Scene &scene : scenes) {
    if (scene.id == id) return &scene;
  }
  return nullptr;
}

const CorpusItem *Corpus::FindItem(std::string_view id) const {
  for (const CorpusItem &item : items) {
    if (item.id == id) return &item;
  }
  return nullptr;
}

bool Corpus::EncodesRoles() const {
  for (const CorpusItem &item : items) {
    for (const RoleProperty &rp : item.gold) {
      if (rp.role != schema.target_role) return true;
    }
  }
  return false;
}

std::vector<std::string> ValidateCorpus(const Corpus &corpus) {
  std::vector<std::string> violations;
  for (const std::string &v : ValidateSchema(corpus.schema)) {
    violations.push_back("schema: " + v);
  }
  std::set<std::string> scene_ids;
  for (const Scene &scene : corpus.scenes) {
    if (!scene_ids.insert(scene.id).second) {
      violations.push_back("duplicate scene id '" + scene.id + "'");
    }
    for (std::string &v : ValidateScene(scene, corpus.schema)) {
      violations.push_back(std::move(v));
    }
  }
  std::set<std::string> item_ids;
  for (const CorpusItem &item : corpus.items) {
    const std::string at = "item '" + item.id + "': ";
    if (item.id.empty()) violations.push_back("item with empty id");
    if (!item_ids.insert(item.id).second) {
      violations.push_back(at + "duplicate item id");
    }
    if (!scene_ids.contains(item.scene_id)) {
      violations.push_back(at + "field 'scene' names unknown scene '" +
                           item.scene_id + "'");
    }
    for (const RoleProperty &rp : item.gold) {
      if (!corpus.schema.IsRole(rp.role)) {
        violations.push_back(at + "field 'gold' uses undeclared role '" +
                             rp.role + "'");
      }
      if (!corpus.schema.IsLegal(rp.property)) {
        violations.push_back(at + "field 'gold' has illegal property " +
                             rp.property.ToString());
      }
    }
    if (item.token_labels) {
      size_t n = Tokenize(item.text, item.language).size();
      if (item.token_labels->size() != n) {
        violations.push_back(at + "field 'token_labels' has " +
                             std::to_string(item.token_labels->size()) +
                             " labels for " + std::to_string(n) + " tokens");
      }
      for (const Label &label : *item.token_labels) {
        if (label && !corpus.schema.IsLegal(*label)) {
          violations.push_back(at + "field 'token_labels' has illegal property " +
                               label->ToString());
        }
      }
    }
  }
  return violations;
}

Corpus ParseCorpus(std::string_view text, const std::string &source) {
  Corpus corpus;
  try {
    Json doc = Json::parse(text);
    if (doc.value("format", "") != kCorpusFormat) {
      throw Error(ErrorCode::kParse, source + ": corpus format tag must be '" +
                                         kCorpusFormat + "'");
    }
    corpus.name = doc.value("name", "");
    corpus.schema = SchemaFromJson(doc.at("schema"));
    if (doc.contains("scenes")) {
      for (const Json &scene : doc.at("scenes")) {
        corpus.scenes.push_back(SceneFromJson(scene));
      }
    }
    for (const Json &j : doc.at("items")) {
      CorpusItem item;
      item.id = j.at("id").get<std::string>();
      item.scene_id = j.at("scene").get<std::string>();
      item.text = j.at("text").get<std::string>();
      item.language = ParseLanguage(j.value("language", "english"));
      item.gold =
          RolePropertySetFromJson(j.at("gold"), corpus.schema.target_role);
      if (j.contains("token_labels") && !j.at("token_labels").is_null()) {
        item.token_labels = LabelsFromJson(j.at("token_labels"));
      }
      corpus.items.push_back(std::move(item));
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParse, source + ": " + e.what());
  }
  std::vector<std::string> violations = ValidateCorpus(corpus);
  if (!violations.empty()) {
    std::string message = source + ": " + violations.front();
    if (violations.size() > 1) {
      message += " (and " + std::to_string(violations.size() - 1) + " more)";
    }
    throw Error(ErrorCode::kSchemaViolation, message);
  }
  return corpus;
}

std::string SerializeCorpus(const Corpus &corpus) {
  Json scenes = Json::array();
  for (const Scene &scene : corpus.scenes) scenes.push_back(ToJson(scene));
  Json items = Json::array();
  for (const CorpusItem &item : corpus.items) {
    Json j = {{"id", item.id},
              {"scene", item.scene_id},
              {"language", LanguageName(item.language)},
              {"text", item.text},
              {"gold", ToJson(item.gold)}};
    if (item.token_labels) j["token_labels"] = LabelsToJson(*item.token_labels);
    items.push_back(std::move(j));
  }
  Json doc = {{"format", kCorpusFormat},
              {"name", corpus.name},
              {"schema", ToJson(corpus.schema)},
              {"scenes", scenes},
              {"items", items}};
  return doc.dump(2) + "\n";
}

Corpus LoadCorpus(const std::string &path) {
  return ParseCorpus(ReadFile(path), path);
}

void SaveCorpus(const Corpus &corpus, const std::string &path) {
  WriteFileAtomic(path, SerializeCorpus(corpus));
}

DomainSchema LoadSchema(const std::string &path) {
  DomainSchema schema;
  try {
    Json doc = Json::parse(ReadFile(path));
    std::string format = doc.value("format", "");
    if (format == kCorpusFormat) {
      schema = SchemaFromJson(doc.at("schema"));
    } else if (format == kSchemaFormat || format.empty()) {
      schema = SchemaFromJson(doc);
    } else {
      throw Error(ErrorCode::kParse,
                  path + ": unexpected format tag '" + format + "'");
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
  std::vector<std::string> violations = ValidateSchema(schema);
  if (!violations.empty()) {
    throw Error(ErrorCode::kSchemaViolation, path + ": " + violations.front());
  }
  return schema;
}

std::vector<size_t> SeededPermutation(size_t n, uint64_t seed) {
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (size_t i = n; i > 1; --i) {
    size_t j = static_cast<size_t>(Bounded(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::pair<Corpus, Corpus> SplitCorpus(const Corpus &corpus, double fraction,
                                      uint64_t seed) {
  if (!(fraction > 0 && fraction < 1)) {
    throw Error(ErrorCode::kInvalidArgument,
                "train fraction must lie strictly between 0 and 1");
  }
  const size_t n = corpus.items.size();
  const size_t train_count =
      static_cast<size_t>(std::llround(fraction * static_cast<double>(n)));
  std::vector<size_t> order = SeededPermutation(n, seed);
  std::vector<bool> in_train(n, false);
  for (size_t k = 0; k < train_count; ++k) in_train[order[k]] = true;

  auto part = [&](bool train) {
    Corpus out;
    out.name = corpus.name + (train ? "-train" : "-test");
    out.schema = corpus.schema;
    std::set<std::string> used;
    for (size_t i = 0; i < n; ++i) {
      if (in_train[i] != train) continue;
      out.items.push_back(corpus.items[i]);
      used.insert(corpus.items[i].scene_id);
    }
    for (const Scene &scene : corpus.scenes) {
      if (used.contains(scene.id)) out.scenes.push_back(scene);
    }
    return out;
  };
  return {part(true), part(false)};
}

}  // namespace refannot
