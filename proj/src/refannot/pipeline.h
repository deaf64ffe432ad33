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

// Corpus-level operations: annotate every item with one method, store the
// results, and score them against the corpus gold.

#ifndef REFANNOT_PIPELINE_H_
#define REFANNOT_PIPELINE_H_

#include <string>
#include <vector>

#include "refannot/corpus.h"
#include "refannot/evaluation.h"
#include "refannot/lexicon.h"
#include "refannot/parser.h"
#include "refannot/tagger.h"

namespace refannot {

inline constexpr char kHeuristicMethod[] = "Heuristic";
inline constexpr char kBaselineMethod[] = "Baseline";

struct AnnotatedItem {
  std::string id;
  AnnotationResult result;
};

// Output of one method over one corpus, in corpus order.
struct AnnotationSet {
  std::string method;
  std::string corpus;
  std::vector<AnnotatedItem> items;
};

// Throws Error(kSchemaViolation) when the lexicon names properties the corpus
// schema does not allow.
AnnotationSet AnnotateCorpus(const Corpus &corpus, const MappingTable &lexicon);
AnnotationSet TagCorpus(const Corpus &corpus, const TaggerModel &tagger);

// Tokenized descriptions with flattened gold, for lexicon induction.
std::vector<TrainingDescription> TrainingData(const Corpus &corpus);
MappingTable InduceFromCorpus(const Corpus &corpus);

// Items with token_labels train the tagger directly. The others are labelled
// with LabelWithLexicon using `lexicon`, or a lexicon induced from `corpus`
// when none is given.
TaggerModel TrainTagger(const Corpus &corpus,
                        const MappingTable *lexicon = nullptr);

// Scores `annotations` against the corpus gold, item by item in corpus order.
// Role-tagged sets are compared when the corpus encodes landmarks, flattened
// sets otherwise. Throws Error(kInvalidArgument) when the item ids differ.
EvalReport EvaluateAnnotations(const AnnotationSet &annotations,
                               const Corpus &gold);

std::string SerializeAnnotations(const AnnotationSet &set);
AnnotationSet ParseAnnotations(std::string_view text, const std::string &source);
void SaveAnnotations(const AnnotationSet &set, const std::string &path);
AnnotationSet LoadAnnotations(const std::string &path);

}  // namespace refannot

#endif  // REFANNOT_PIPELINE_H_
