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

// Shallow parsing of definite descriptions into role-tagged property sets.
//
// English input is reversed so that the head noun precedes its modifiers, as
// it does in Portuguese. The description is split at relational phrases
// ("near", "on top of") into one segment per referent: the target first,
// then one landmark per relation. Each remaining word is looked up together
// with its nearest noun, then on its own; words that match nothing are
// discarded.

#ifndef REFANNOT_PARSER_H_
#define REFANNOT_PARSER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refannot/domain.h"
#include "refannot/lexicon.h"

namespace refannot {

struct DescriptionInput {
  std::vector<std::string> tokens;  // normalized, surface order
  Language language = Language::kEnglish;
  std::string scene_id;
};

struct Segment {
  std::string role;
  // Tokens in oriented order, with their surface positions.
  std::vector<std::string> tokens;
  std::vector<size_t> positions;
  // Relational property that opened the segment; its value is `role`.
  std::optional<Property> trigger;
  size_t trigger_begin = 0;
  size_t trigger_length = 0;
};

enum class SpanKind { kTrigger, kPhrase, kPair, kWord };

const char *SpanKindName(SpanKind kind);

struct MatchedSpan {
  size_t begin = 0;  // surface position
  size_t length = 1;
  std::string role;
  Property property;
  SpanKind kind = SpanKind::kWord;
  std::string head_noun;  // set for kPair
};

struct DiscardedToken {
  std::string token;
  size_t position = 0;

  bool operator==(const DiscardedToken &) const = default;
};

struct AnnotationResult {
  std::vector<std::string> tokens;
  Language language = Language::kEnglish;
  RolePropertySet properties;
  std::vector<Segment> segments;
  std::vector<MatchedSpan> spans;  // ordered by position
  std::vector<DiscardedToken> discarded;
};

// Whitespace split followed by Normalize; empty tokens are dropped.
std::vector<std::string> Tokenize(std::string_view raw, Language language);

// Reversed copy for English, unchanged otherwise.
std::vector<std::string> Orient(std::span<const std::string> tokens,
                                Language language);

// Segments an oriented token sequence at relational lexicon matches. Phrases
// are matched in surface order, and segments are numbered in surface order:
// the first is the target, the k-th relation opens landmark role k.
std::vector<Segment> SplitOnRelations(std::span<const std::string> oriented,
                                      Language language,
                                      const MappingTable &lexicon,
                                      const DomainSchema &schema);

// Closest noun other than the word at `position`, preferring the head-noun
// side (earlier in oriented order) at equal distance.
std::optional<std::string> NearestNoun(size_t position, const Segment &segment,
                                       Language language,
                                       const MappingTable &lexicon);

// Never fails: unknown words end up in `discarded` and the property set may
// be empty. Lexicon properties with attributes unknown to `schema` are
// treated as taxonomic; use CheckConsistency to reject such lexicons early.
AnnotationResult Annotate(const DescriptionInput &input,
                          const MappingTable &lexicon,
                          const DomainSchema &schema);

// Throws Error(kSchemaViolation) listing lexicon properties that are not
// legal under `schema`.
void CheckConsistency(const MappingTable &lexicon, const DomainSchema &schema);

}  // namespace refannot

#endif  // REFANNOT_PARSER_H_
