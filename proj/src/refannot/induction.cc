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

// Lexicon induction from annotated descriptions.

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "refannot/error.h"
#include "refannot/lexicon.h"

namespace refannot {

namespace {

struct Counts {
  size_t occurrences = 0;
  std::map<Property, size_t> cooccurrences;

  // Most frequent co-occurring property if it covers a strict majority of
  // the occurrences. Ties go to the smallest property.
  std::optional<Property> Majority() const {
    const Property *best = nullptr;
    size_t best_count = 0;
    for (const auto &[property, count] : cooccurrences) {
      if (count > best_count) {
        best = &property;
        best_count = count;
      }
    }
    if (best == nullptr || 2 * best_count <= occurrences) return std::nullopt;
    return *best;
  }
};

std::string Join(const std::vector<std::string> &tokens, size_t begin,
                 size_t n) {
  std::string joined;
  for (size_t i = begin; i < begin + n; ++i) {
    if (i > begin) joined += ' ';
    joined += tokens[i];
  }
  return joined;
}

std::vector<std::string> Split(const std::string &unit) {
  std::vector<std::string> words;
  size_t start = 0;
  while (start <= unit.size()) {
    size_t space = unit.find(' ', start);
    if (space == std::string::npos) space = unit.size();
    words.push_back(unit.substr(start, space - start));
    start = space + 1;
  }
  return words;
}

// Per-description alignment of tokens to gold properties.
struct Alignment {
  std::vector<PropertySet> anchors;  // per token
  PropertySet unexplained;
};

Alignment Align(const std::vector<std::string> &tokens, const PropertySet &gold,
                const DomainSchema &schema) {
  Alignment alignment;
  alignment.anchors.resize(tokens.size());
  PropertySet explained;
  for (size_t i = 0; i < tokens.size(); ++i) {
    for (const Property &p : gold) {
      bool spelled = tokens[i] == p.value ||
                     (schema.IsRelational(p.attribute) &&
                      tokens[i] == p.attribute);
      if (spelled) {
        alignment.anchors[i].insert(p);
        explained.insert(p);
      }
    }
  }
  for (const Property &p : gold) {
    if (!explained.contains(p)) alignment.unexplained.insert(p);
  }
  return alignment;
}

void Count(Counts &counts, const PropertySet &properties) {
  ++counts.occurrences;
  for (const Property &p : properties) ++counts.cooccurrences[p];
}

// Nearest head-noun candidate of token `i`, scanning toward the head first:
// rightward in English surface order, leftward in Portuguese.
std::string NearestCandidate(const std::vector<std::string> &tokens, size_t i,
                             Language language,
                             const std::set<std::string> &candidates) {
  const long n = static_cast<long>(tokens.size());
  const long step = language == Language::kEnglish ? 1 : -1;
  for (long d = 1; d < n; ++d) {
    for (long j : {static_cast<long>(i) + step * d,
                   static_cast<long>(i) - step * d}) {
      if (j >= 0 && j < n && candidates.contains(tokens[j])) return tokens[j];
    }
  }
  return std::string();
}

}  // namespace

MappingTable InduceLexicon(std::span<const TrainingDescription> training,
                           const DomainSchema &schema) {
  if (training.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "lexicon induction needs at least one training description");
  }
  const std::string canonical_landmark = schema.LandmarkRole(1);

  // Canonicalized gold sets, validated up front.
  std::vector<PropertySet> golds;
  golds.reserve(training.size());
  for (const TrainingDescription &item : training) {
    PropertySet gold;
    for (const Property &p : item.gold) {
      if (!schema.IsLegal(p)) {
        throw Error(ErrorCode::kSchemaViolation,
                    "training property " + p.ToString() +
                        " is not legal in domain '" + schema.domain + "'");
      }
      if (schema.IsRelational(p.attribute)) {
        gold.insert({p.attribute, canonical_landmark});
      } else {
        gold.insert(p);
      }
    }
    golds.push_back(std::move(gold));
  }

  using UnitKey = std::pair<Language, std::string>;
  std::vector<Alignment> alignments(training.size());
  for (size_t k = 0; k < training.size(); ++k) {
    if (!golds[k].empty()) {
      alignments[k] = Align(training[k].tokens, golds[k], schema);
    }
  }

  std::map<UnitKey, Counts> units;
  for (size_t k = 0; k < training.size(); ++k) {
    if (golds[k].empty()) continue;
    const TrainingDescription &item = training[k];
    const std::vector<std::string> &tokens = item.tokens;
    const Alignment &alignment = alignments[k];
    for (size_t i = 0; i < tokens.size(); ++i) {
      const PropertySet &anchors = alignment.anchors[i];
      Count(units[{item.language, tokens[i]}],
            anchors.empty() ? alignment.unexplained : anchors);
    }
    for (size_t n = 2; n <= MappingTable::kMaxSurfaceTokens; ++n) {
      for (size_t i = 0; i + n <= tokens.size(); ++i) {
        bool unanchored = true;
        for (size_t j = i; j < i + n; ++j) {
          unanchored = unanchored && alignment.anchors[j].empty();
        }
        Count(units[{item.language, Join(tokens, i, n)}],
              unanchored ? alignment.unexplained : PropertySet());
      }
    }
  }

  std::map<UnitKey, Property> mapped;
  for (const auto &[key, counts] : units) {
    if (key.second.find(' ') != std::string::npos) continue;
    if (auto p = counts.Majority()) mapped.emplace(key, *p);
  }
  // An n-gram is kept only when none of its words maps on its own to a
  // different property; otherwise it would swallow that word's meaning.
  for (const auto &[key, counts] : units) {
    if (key.second.find(' ') == std::string::npos) continue;
    std::optional<Property> p = counts.Majority();
    if (!p) continue;
    bool compatible = true;
    for (const std::string &word : Split(key.second)) {
      auto it = mapped.find({key.first, word});
      if (it != mapped.end() && it->second != *p) compatible = false;
    }
    if (compatible) mapped.emplace(key, *p);
  }

  // Head-noun candidates: type words plus heads of dotted attribute names.
  std::map<Language, std::set<std::string>> candidates;
  std::set<std::string> dotted_heads;
  for (const AttributeDef &def : schema.attributes) {
    size_t dot = def.name.find('.');
    if (dot != std::string::npos && dot > 0) {
      dotted_heads.insert(def.name.substr(0, dot));
    }
  }
  for (Language language : {Language::kEnglish, Language::kPortuguese}) {
    candidates[language] = dotted_heads;
  }
  for (const auto &[key, property] : mapped) {
    if (property.attribute == schema.type_attribute &&
        key.second.find(' ') == std::string::npos) {
      candidates[key.first].insert(key.second);
    }
  }

  // Per-word statistics split by nearest head noun.
  std::map<UnitKey, std::map<std::string, Counts>> by_head;
  for (size_t k = 0; k < training.size(); ++k) {
    const TrainingDescription &item = training[k];
    if (golds[k].empty()) continue;
    const Alignment &alignment = alignments[k];
    for (size_t i = 0; i < item.tokens.size(); ++i) {
      std::string head = NearestCandidate(item.tokens, i, item.language,
                                          candidates[item.language]);
      if (head.empty()) continue;
      // Properties of the other mapped words, the head included, are
      // already accounted for.
      PropertySet left = alignment.anchors[i];
      if (left.empty()) {
        left = alignment.unexplained;
        for (size_t j = 0; j < item.tokens.size(); ++j) {
          if (j == i) continue;
          auto other = mapped.find({item.language, item.tokens[j]});
          if (other != mapped.end()) left.erase(other->second);
        }
      }
      Count(by_head[{item.language, item.tokens[i]}][head], left);
    }
  }

  std::vector<LexicalEntry> entries;
  for (const auto &[key, heads] : by_head) {
    std::map<std::string, Property> majorities;
    std::set<Property> distinct;
    for (const auto &[head, counts] : heads) {
      if (head == key.second) continue;
      if (auto p = counts.Majority()) {
        majorities.emplace(head, *p);
        distinct.insert(*p);
      }
    }
    if (distinct.size() < 2) continue;
    for (const auto &[head, property] : majorities) {
      entries.push_back({{key.second}, head, property, key.first});
    }
  }

  for (const auto &[key, property] : mapped) {
    LexicalEntry entry;
    entry.language = key.first;
    entry.property = property;
    entry.surface = Split(key.second);
    entries.push_back(std::move(entry));
  }

  return MappingTable(std::move(entries), {}, schema.type_attribute);
}

}  // namespace refannot
