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

#include "refannot/parser.h"

#include <algorithm>

#include "refannot/error.h"

namespace refannot {

namespace {

bool IsRelationalAttribute(const DomainSchema &schema,
                           std::string_view attribute) {
  const AttributeDef *def = schema.FindAttribute(attribute);
  return def != nullptr && def->kind == AttributeKind::kRelational;
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

Segment MakeSegment(std::string role, const std::vector<std::string> &surface,
                    size_t begin, size_t end, Language language) {
  Segment segment;
  segment.role = std::move(role);
  for (size_t i = begin; i < end; ++i) {
    segment.tokens.push_back(surface[i]);
    segment.positions.push_back(i);
  }
  if (language == Language::kEnglish) {
    std::reverse(segment.tokens.begin(), segment.tokens.end());
    std::reverse(segment.positions.begin(), segment.positions.end());
  }
  return segment;
}

}  // namespace

const char *SpanKindName(SpanKind kind) {
  switch (kind) {
    case SpanKind::kTrigger: return "trigger";
    case SpanKind::kPhrase: return "phrase";
    case SpanKind::kPair: return "pair";
    case SpanKind::kWord: return "word";
  }
  return "word";
}

std::vector<std::string> Tokenize(std::string_view raw, Language) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && IsSpace(raw[i])) ++i;
    size_t start = i;
    while (i < raw.size() && !IsSpace(raw[i])) ++i;
    if (i > start) {
      std::string token = Normalize(raw.substr(start, i - start));
      if (!token.empty()) tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

std::vector<std::string> Orient(std::span<const std::string> tokens,
                                Language language) {
  std::vector<std::string> oriented(tokens.begin(), tokens.end());
  if (language == Language::kEnglish) {
    std::reverse(oriented.begin(), oriented.end());
  }
  return oriented;
}

std::vector<Segment> SplitOnRelations(std::span<const std::string> oriented,
                                      Language language,
                                      const MappingTable &lexicon,
                                      const DomainSchema &schema) {
  // Orientation is an involution, so orienting again restores surface order.
  const std::vector<std::string> surface = Orient(oriented, language);

  std::vector<Segment> segments;
  std::string role = schema.target_role;
  std::optional<Property> trigger;
  size_t trigger_begin = 0, trigger_length = 0;
  size_t segment_begin = 0;
  size_t i = 0;
  while (i < surface.size()) {
    auto match = lexicon.LookupMultiword(surface, i, language);
    if (!match || !IsRelationalAttribute(schema, match->property.attribute)) {
      ++i;
      continue;
    }
    Segment closed = MakeSegment(role, surface, segment_begin, i, language);
    closed.trigger = trigger;
    closed.trigger_begin = trigger_begin;
    closed.trigger_length = trigger_length;
    segments.push_back(std::move(closed));

    role = schema.LandmarkRole(static_cast<int>(segments.size()));
    trigger = Property{match->property.attribute, role};
    trigger_begin = i;
    trigger_length = match->length;
    i += match->length;
    segment_begin = i;
  }
  Segment last = MakeSegment(role, surface, segment_begin, surface.size(),
                             language);
  last.trigger = trigger;
  last.trigger_begin = trigger_begin;
  last.trigger_length = trigger_length;
  segments.push_back(std::move(last));
  return segments;
}

std::optional<std::string> NearestNoun(size_t position, const Segment &segment,
                                       Language language,
                                       const MappingTable &lexicon) {
  const size_t n = segment.tokens.size();
  for (size_t d = 1; d < n; ++d) {
    if (position >= d && lexicon.IsNoun(segment.tokens[position - d], language)) {
      return segment.tokens[position - d];
    }
    if (position + d < n &&
        lexicon.IsNoun(segment.tokens[position + d], language)) {
      return segment.tokens[position + d];
    }
  }
  return std::nullopt;
}

AnnotationResult Annotate(const DescriptionInput &input,
                          const MappingTable &lexicon,
                          const DomainSchema &schema) {
  AnnotationResult result;
  result.tokens = input.tokens;
  result.language = input.language;
  const Language language = input.language;
  const std::vector<std::string> &surface = input.tokens;

  result.segments = SplitOnRelations(Orient(surface, language), language,
                                     lexicon, schema);

  for (const Segment &segment : result.segments) {
    if (segment.trigger) {
      result.spans.push_back({segment.trigger_begin, segment.trigger_length,
                              schema.target_role, *segment.trigger,
                              SpanKind::kTrigger, ""});
      result.properties.insert({schema.target_role, *segment.trigger});
    }
    if (segment.tokens.empty()) continue;

    // Multi-word phrases, longest first, in surface order.
    auto [lo, hi] = std::minmax_element(segment.positions.begin(),
                                        segment.positions.end());
    const size_t begin = *lo, end = *hi + 1;
    std::span<const std::string> range(surface.data() + begin, end - begin);
    std::vector<bool> consumed(end - begin, false);
    for (size_t i = 0; i < range.size();) {
      auto match = lexicon.LookupMultiword(range, i, language);
      if (match && match->length >= 2 &&
          !IsRelationalAttribute(schema, match->property.attribute)) {
        result.spans.push_back({begin + i, match->length, segment.role,
                                match->property, SpanKind::kPhrase, ""});
        result.properties.insert({segment.role, match->property});
        std::fill_n(consumed.begin() + i, match->length, true);
        i += match->length;
      } else {
        ++i;
      }
    }

    // Remaining words in oriented order: with the nearest noun, then alone.
    for (size_t j = 0; j < segment.tokens.size(); ++j) {
      const size_t position = segment.positions[j];
      if (consumed[position - begin]) continue;
      const std::string &word = segment.tokens[j];
      std::optional<std::string> noun =
          NearestNoun(j, segment, language, lexicon);
      std::optional<Property> property;
      SpanKind kind = SpanKind::kWord;
      if (noun) {
        property = lexicon.LookupPair(word, *noun, language);
        if (property) kind = SpanKind::kPair;
      }
      if (!property) property = lexicon.LookupWord(word, language);
      if (!property) {
        result.discarded.push_back({word, position});
        continue;
      }
      result.spans.push_back({position, 1, segment.role, *property, kind,
                              kind == SpanKind::kPair ? *noun : ""});
      result.properties.insert({segment.role, *property});
    }
  }

  std::sort(result.spans.begin(), result.spans.end(),
            [](const MatchedSpan &a, const MatchedSpan &b) {
              return a.begin < b.begin;
            });
  std::sort(result.discarded.begin(), result.discarded.end(),
            [](const DiscardedToken &a, const DiscardedToken &b) {
              return a.position < b.position;
            });
  return result;
}

void CheckConsistency(const MappingTable &lexicon, const DomainSchema &schema) {
  std::vector<std::string> violations = lexicon.Validate(schema);
  if (violations.empty()) return;
  std::string message = violations.front();
  if (violations.size() > 1) {
    message += " (and " + std::to_string(violations.size() - 1) + " more)";
  }
  throw Error(ErrorCode::kSchemaViolation, message);
}

}  // namespace refannot
