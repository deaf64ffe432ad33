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

// Native corpus files: a schema, the scenes shown to participants and the
// descriptions they produced, each with a gold property set.
//
//   {
//     "format": "refannot-corpus/1",
//     "name": "gre3d3-mini",
//     "schema": {"domain": ..., "attributes": [...], "roles": ["lm"]},
//     "scenes": [{"id": "s1", "target": "o1", "objects": [...]}],
//     "items": [{"id": "d1", "scene": "s1", "language": "english",
//                "text": "the red ball", "gold": [...]}]
//   }
//
// See docs/corpus-format.md for the full field list.

#ifndef REFANNOT_CORPUS_H_
#define REFANNOT_CORPUS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "refannot/domain.h"
#include "refannot/lexicon.h"

namespace refannot {

struct CorpusItem {
  std::string id;
  std::string scene_id;
  std::string text;
  Language language = Language::kEnglish;
  // Role-tagged gold; untagged entries in files belong to the target.
  RolePropertySet gold;
  // Optional per-token labels, aligned with Tokenize(text).
  std::optional<std::vector<Label>> token_labels;

  bool operator==(const CorpusItem &) const = default;
};

struct Corpus {
  std::string name;
  DomainSchema schema;
  std::vector<Scene> scenes;
  std::vector<CorpusItem> items;

  const Scene *FindScene(std::string_view id) const;
  const CorpusItem *FindItem(std::string_view id) const;
  // True when any gold property belongs to a landmark. Evaluation then
  // compares role-tagged sets.
  bool EncodesRoles() const;

  bool operator==(const Corpus &) const = default;
};

// Empty iff the corpus is consistent. Messages name the item or scene and
// the offending field.
std::vector<std::string> ValidateCorpus(const Corpus &corpus);

// Parse and validate. Throws Error(kParse) for malformed documents and
// Error(kSchemaViolation) for invalid content.
Corpus ParseCorpus(std::string_view text, const std::string &source);
std::string SerializeCorpus(const Corpus &corpus);

Corpus LoadCorpus(const std::string &path);
void SaveCorpus(const Corpus &corpus, const std::string &path);

// Reads a schema document, or the schema of a corpus document.
DomainSchema LoadSchema(const std::string &path);

// Seeded pseudo-random partition: round(fraction * n) items go to training,
// the rest to test; both keep corpus order. Throws Error(kInvalidArgument)
// unless 0 < fraction < 1.
std::pair<Corpus, Corpus> SplitCorpus(const Corpus &corpus, double fraction,
                                      uint64_t seed);

// Deterministic Fisher-Yates permutation of 0..n-1 driven by mt19937_64.
std::vector<size_t> SeededPermutation(size_t n, uint64_t seed);

}  // namespace refannot

#endif  // REFANNOT_CORPUS_H_
