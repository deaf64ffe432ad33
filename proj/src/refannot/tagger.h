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

// Unigram baseline: every token gets the label it carried most often in
// labelled training descriptions. It sees the same annotated items as lexicon
// induction but has no notion of phrases, head nouns or referents, so all of
// its output is attributed to the target.

#ifndef REFANNOT_TAGGER_H_
#define REFANNOT_TAGGER_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "refannot/domain.h"
#include "refannot/lexicon.h"
#include "refannot/parser.h"

namespace refannot {

struct LabeledExample {
  std::vector<std::string> tokens;
  std::vector<Label> labels;
  Language language = Language::kEnglish;
};

class TaggerModel {
 public:
  using LabelCounts = std::map<Label, size_t>;
  using TokenKey = std::pair<Language, std::string>;

  TaggerModel() = default;

  // Throws Error(kInvalidArgument) on empty input or when an example has
  // different numbers of tokens and labels.
  static TaggerModel Train(std::span<const LabeledExample> examples);
  static TaggerModel FromCounts(std::map<TokenKey, LabelCounts> counts);

  // Most frequent label, ties broken by label order (null first). Unseen
  // tokens get the null label.
  Label LabelOf(std::string_view token, Language language) const;

  AnnotationResult Tag(std::span<const std::string> tokens, Language language,
                       const std::string &target_role = "target") const;

  const std::map<TokenKey, LabelCounts> &counts() const { return counts_; }

 private:
  std::map<TokenKey, LabelCounts> counts_;
  std::map<TokenKey, Label> best_;
};

// Labels every token of a description with the property the shallow parser
// attributes to it. Relational values are canonicalized to the first
// landmark role. Used to derive baseline training data from the same
// knowledge a lexicon holds when a corpus carries no token labels.
LabeledExample LabelWithLexicon(const std::vector<std::string> &tokens,
                                Language language, const MappingTable &lexicon,
                                const DomainSchema &schema);

void SaveTaggerModel(const TaggerModel &model, const std::string &path);
TaggerModel LoadTaggerModel(const std::string &path);

}  // namespace refannot

#endif  // REFANNOT_TAGGER_H_
