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

// The word-property mapping table. Entries map a normalized surface form of
// one to four tokens, optionally conditioned on a head noun, to a property:
//
//   english  "on top of"        -> above-lm
//   english  "dark" / "beard"   -> beard.colour-dark
//   english  "dark" / "man"     -> hair.colour-dark
//
// Tables are either written by hand (tab-separated or JSON files) or induced
// from annotated training descriptions.

#ifndef REFANNOT_LEXICON_H_
#define REFANNOT_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "refannot/domain.h"

namespace refannot {

enum class Language { kEnglish, kPortuguese };

const char *LanguageName(Language language);
// Accepts "english"/"en" and "portuguese"/"pt".
Language ParseLanguage(std::string_view name);

// Lowercases (ASCII and Latin-1 letters in UTF-8) and strips punctuation from
// both ends. Internal punctuation such as hyphens is kept.
std::string Normalize(std::string_view token);

struct LexicalEntry {
  std::vector<std::string> surface;
  std::string head_noun;  // empty: applies regardless of the head noun
  Property property;
  Language language = Language::kEnglish;
};

struct MultiwordMatch {
  Property property;
  size_t length = 0;
};

class MappingTable {
 public:
  static constexpr size_t kMaxSurfaceTokens = 4;

  MappingTable() = default;

  // Throws Error(kInvalidArgument) on malformed entries or when two entries
  // share a (surface, head noun, language) key. Nouns are the explicit
  // `nouns`, every single-token surface mapped to `type_attribute`, and
  // every head noun named by a pair entry.
  explicit MappingTable(std::vector<LexicalEntry> entries,
                        std::map<Language, std::set<std::string>> nouns = {},
                        std::string type_attribute = "type");

  std::optional<Property> LookupPair(std::string_view word,
                                     std::string_view noun,
                                     Language language) const;
  std::optional<Property> LookupWord(std::string_view word,
                                     Language language) const;
  // Longest head-free entry starting at `position`.
  std::optional<MultiwordMatch> LookupMultiword(
      std::span<const std::string> tokens, size_t position,
      Language language) const;
  bool IsNoun(std::string_view word, Language language) const;

  const std::vector<LexicalEntry> &entries() const { return entries_; }
  const std::map<Language, std::set<std::string>> &explicit_nouns() const {
    return explicit_nouns_;
  }
  const std::set<std::string> &nouns(Language language) const;
  const std::string &type_attribute() const { return type_attribute_; }
  size_t size() const { return entries_.size(); }

  // Properties not legal under `schema`, one message per offending entry.
  std::vector<std::string> Validate(const DomainSchema &schema) const;

 private:
  using Key = std::tuple<Language, std::string, std::string>;

  std::vector<LexicalEntry> entries_;
  std::map<Key, size_t> index_;
  std::map<Language, std::set<std::string>> explicit_nouns_;
  std::map<Language, std::set<std::string>> nouns_;
  std::string type_attribute_ = "type";
};

struct TrainingDescription {
  std::vector<std::string> tokens;  // normalized, surface order
  PropertySet gold;
  Language language = Language::kEnglish;
};

// Builds a mapping table from annotated descriptions.
//
// A token is aligned to a gold property of its description when it spells
// the property's value, or the name of a relational attribute. Remaining
// tokens, and 2-4 token n-grams of remaining tokens, co-occur with the gold
// properties no token spells. A unit is mapped to its most frequent
// co-occurring property (ties: smallest property) when that property
// accounts for more than half of the unit's occurrences. Descriptions with
// an empty gold set are ignored. Relational values are canonicalized to the
// first landmark role. An n-gram is kept only when none of its words maps on
// its own to a different property.
//
// Words whose majority property differs with the nearest head noun get pair
// entries (word, noun) instead. Head-noun candidates are words mapped to the
// type attribute and the head of dotted attribute names (hair, beard). For
// these counts, properties explained by the other mapped words of the
// description are discounted.
//
// Throws Error(kInvalidArgument) on empty input and Error(kSchemaViolation)
// when a gold property is not legal under `schema`.
MappingTable InduceLexicon(std::span<const TrainingDescription> training,
                           const DomainSchema &schema);

// Lexicon files. Paths ending in ".json" use the native structured format;
// anything else is tab-separated text:
//
//   # language <TAB> surface <TAB> head noun <TAB> attribute <TAB> value
//   english	on top of		above	lm
//   english	dark	beard	beard.colour	dark
//   noun	english	beard
MappingTable LoadLexicon(const std::string &path);
void SaveLexicon(const MappingTable &table, const std::string &path);

MappingTable ParseLexiconTsv(std::string_view text);
std::string FormatLexiconTsv(const MappingTable &table);

}  // namespace refannot

#endif  // REFANNOT_LEXICON_H_
