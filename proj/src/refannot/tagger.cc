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

#include "refannot/tagger.h"

#include "json.hpp"
#include "refannot/error.h"
#include "refannot/fileutil.h"

namespace refannot {

namespace {

const char kTaggerFormat[] = "refannot-tagger/1";

}  // namespace

TaggerModel TaggerModel::Train(std::span<const LabeledExample> examples) {
  if (examples.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "tagger training needs at least one labelled example");
  }
  std::map<TokenKey, LabelCounts> counts;
  for (size_t k = 0; k < examples.size(); ++k) {
    const LabeledExample &example = examples[k];
    if (example.tokens.size() != example.labels.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "labelled example " + std::to_string(k) + " has " +
                      std::to_string(example.tokens.size()) + " tokens but " +
                      std::to_string(example.labels.size()) + " labels");
    }
    for (size_t i = 0; i < example.tokens.size(); ++i) {
      ++counts[{example.language, example.tokens[i]}][example.labels[i]];
    }
  }
  return FromCounts(std::move(counts));
}

TaggerModel TaggerModel::FromCounts(std::map<TokenKey, LabelCounts> counts) {
  TaggerModel model;
  model.counts_ = std::move(counts);
  for (const auto &[key, labels] : model.counts_) {
    const Label *best = nullptr;
    size_t best_count = 0;
    for (const auto &[label, count] : labels) {
      if (best == nullptr || count > best_count) {
        best = &label;
        best_count = count;
      }
    }
    if (best != nullptr) model.best_.emplace(key, *best);
  }
  return model;
}

Label TaggerModel::LabelOf(std::string_view token, Language language) const {
  auto it = best_.find({language, std::string(token)});
  return it == best_.end() ? std::nullopt : it->second;
}

AnnotationResult TaggerModel::Tag(std::span<const std::string> tokens,
                                  Language language,
                                  const std::string &target_role) const {
  AnnotationResult result;
  result.tokens.assign(tokens.begin(), tokens.end());
  result.language = language;
  Segment segment;
  segment.role = target_role;
  segment.tokens = Orient(tokens, language);
  for (size_t i = 0; i < tokens.size(); ++i) {
    segment.positions.push_back(language == Language::kEnglish
                                    ? tokens.size() - 1 - i
                                    : i);
  }
  result.segments.push_back(std::move(segment));

  for (size_t i = 0; i < tokens.size(); ++i) {
    Label label = LabelOf(tokens[i], language);
    if (!label) {
      result.discarded.push_back({tokens[i], i});
      continue;
    }
    result.spans.push_back({i, 1, target_role, *label, SpanKind::kWord, ""});
    result.properties.insert({target_role, *label});
  }
  return result;
}

LabeledExample LabelWithLexicon(const std::vector<std::string> &tokens,
                                Language language, const MappingTable &lexicon,
                                const DomainSchema &schema) {
  LabeledExample example;
  example.tokens = tokens;
  example.language = language;
  example.labels.assign(tokens.size(), std::nullopt);
  AnnotationResult parse = Annotate({tokens, language, ""}, lexicon, schema);
  for (const MatchedSpan &span : parse.spans) {
    Property property = span.property;
    if (span.kind == SpanKind::kTrigger) property.value = schema.LandmarkRole(1);
    for (size_t i = span.begin; i < span.begin + span.length; ++i) {
      example.labels[i] = property;
    }
  }
  return example;
}

void SaveTaggerModel(const TaggerModel &model, const std::string &path) {
  nlohmann::json tokens = nlohmann::json::array();
  for (const auto &[key, labels] : model.counts()) {
    nlohmann::json entry = {{"language", LanguageName(key.first)},
                            {"token", key.second},
                            {"labels", nlohmann::json::array()}};
    for (const auto &[label, count] : labels) {
      nlohmann::json row = {{"count", count}};
      if (label) {
        row["attribute"] = label->attribute;
        row["value"] = label->value;
      } else {
        row["attribute"] = nullptr;
        row["value"] = nullptr;
      }
      entry["labels"].push_back(std::move(row));
    }
    tokens.push_back(std::move(entry));
  }
  nlohmann::json doc = {{"format", kTaggerFormat}, {"tokens", tokens}};
  WriteFileAtomic(path, doc.dump(2) + "\n");
}

TaggerModel LoadTaggerModel(const std::string &path) {
  std::string text = ReadFile(path);
  try {
    nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.value("format", "") != kTaggerFormat) {
      throw Error(ErrorCode::kParse,
                  path + ": tagger format tag must be '" + kTaggerFormat + "'");
    }
    std::map<TaggerModel::TokenKey, TaggerModel::LabelCounts> counts;
    for (const nlohmann::json &entry : doc.at("tokens")) {
      TaggerModel::TokenKey key{
          ParseLanguage(entry.at("language").get<std::string>()),
          entry.at("token").get<std::string>()};
      for (const nlohmann::json &row : entry.at("labels")) {
        Label label;
        if (!row.at("attribute").is_null()) {
          label = Property{row.at("attribute").get<std::string>(),
                           row.at("value").get<std::string>()};
        }
        counts[key][label] = row.at("count").get<size_t>();
      }
    }
    return TaggerModel::FromCounts(std::move(counts));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

}  // namespace refannot
