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

#include <map>
#include <set>

#include "refannot/error.h"
#include "refannot/fileutil.h"
#include "refannot/serialization.h"

namespace refannot {

namespace {

const char kAnnotationsFormat[] = "refannot-annotations/1";

}  // namespace

AnnotationSet AnnotateCorpus(const Corpus &corpus,
                             const MappingTable &lexicon) {
  CheckConsistency(lexicon, corpus.schema);
  AnnotationSet set{kHeuristicMethod, corpus.name, {}};
  for (const CorpusItem &item : corpus.items) {
    DescriptionInput input{Tokenize(item.text, item.language), item.language,
                           item.scene_id};
    set.items.push_back({item.id, Annotate(input, lexicon, corpus.schema)});
  }
  return set;
}

AnnotationSet TagCorpus(const Corpus &corpus, const TaggerModel &tagger) {
  AnnotationSet set{kBaselineMethod, corpus.name, {}};
  for (const CorpusItem &item : corpus.items) {
    std::vector<std::string> tokens = Tokenize(item.text, item.language);
    set.items.push_back(
        {item.id, tagger.Tag(tokens, item.language, corpus.schema.target_role)});
  }
  return set;
}

std::vector<TrainingDescription> TrainingData(const Corpus &corpus) {
  std::vector<TrainingDescription> data;
  for (const CorpusItem &item : corpus.items) {
    data.push_back({Tokenize(item.text, item.language), Flatten(item.gold),
                    item.language});
  }
  return data;
}

MappingTable InduceFromCorpus(const Corpus &corpus) {
  std::vector<TrainingDescription> data = TrainingData(corpus);
  return InduceLexicon(data, corpus.schema);
}

TaggerModel TrainTagger(const Corpus &corpus, const MappingTable *lexicon) {
  std::optional<MappingTable> induced;
  std::vector<LabeledExample> examples;
  for (const CorpusItem &item : corpus.items) {
    std::vector<std::string> tokens = Tokenize(item.text, item.language);
    if (item.token_labels) {
      examples.push_back({tokens, *item.token_labels, item.language});
      continue;
    }
    if (lexicon == nullptr) {
      if (!induced) induced = InduceFromCorpus(corpus);
      lexicon = &*induced;
    }
    examples.push_back(
        LabelWithLexicon(tokens, item.language, *lexicon, corpus.schema));
  }
  return TaggerModel::Train(examples);
}

EvalReport EvaluateAnnotations(const AnnotationSet &annotations,
                               const Corpus &gold) {
  std::map<std::string, const AnnotationResult *> by_id;
  for (const AnnotatedItem &item : annotations.items) {
    if (!by_id.emplace(item.id, &item.result).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "annotations repeat item '" + item.id + "'");
    }
  }
  for (const AnnotatedItem &item : annotations.items) {
    if (gold.FindItem(item.id) == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "annotated item '" + item.id + "' is not in corpus '" +
                      gold.name + "'");
    }
  }
  const bool role_aware = gold.EncodesRoles();
  std::vector<std::string> ids;
  std::vector<RolePropertySet> hyps, golds;
  std::vector<PropertySet> flat_hyps, flat_golds;
  for (const CorpusItem &item : gold.items) {
    auto it = by_id.find(item.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no annotation for item '" + item.id + "'");
    }
    ids.push_back(item.id);
    if (role_aware) {
      hyps.push_back(it->second->properties);
      golds.push_back(item.gold);
    } else {
      flat_hyps.push_back(Flatten(it->second->properties));
      flat_golds.push_back(Flatten(item.gold));
    }
  }
  EvalReport report = role_aware ? Evaluate(ids, hyps, golds)
                                 : Evaluate(ids, flat_hyps, flat_golds);
  report.method = annotations.method;
  report.corpus = gold.name;
  report.role_aware = role_aware;
  return report;
}

std::string SerializeAnnotations(const AnnotationSet &set) {
  Json items = Json::array();
  for (const AnnotatedItem &item : set.items) {
    Json j = ToJson(item.result);
    j["id"] = item.id;
    items.push_back(std::move(j));
  }
  Json doc = {{"format", kAnnotationsFormat},
              {"method", set.method},
              {"corpus", set.corpus},
              {"items", items}};
  return doc.dump(2) + "\n";
}

AnnotationSet ParseAnnotations(std::string_view text,
                               const std::string &source) {
  AnnotationSet set;
  try {
    Json doc = Json::parse(text);
    if (doc.value("format", "") != kAnnotationsFormat) {
      throw Error(ErrorCode::kParse, source +
                                         ": annotations format tag must be '" +
                                         kAnnotationsFormat + "'");
    }
    set.method = doc.value("method", "");
    set.corpus = doc.value("corpus", "");
    for (const Json &j : doc.at("items")) {
      set.items.push_back(
          {j.at("id").get<std::string>(), AnnotationResultFromJson(j)});
    }
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::kParse, source + ": " + e.what());
  }
  return set;
}

void SaveAnnotations(const AnnotationSet &set, const std::string &path) {
  WriteFileAtomic(path, SerializeAnnotations(set));
}

AnnotationSet LoadAnnotations(const std::string &path) {
  return ParseAnnotations(ReadFile(path), path);
}

}  // namespace refannot
