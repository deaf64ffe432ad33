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

#include "refannot/lexicon.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "refannot/error.h"
#include "refannot/fileutil.h"

namespace refannot {

namespace {

const char kLexiconFormat[] = "refannot-lexicon/1";

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsPunct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

std::string JoinTokens(std::span<const std::string> tokens) {
  std::string joined;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += tokens[i];
  }
  return joined;
}

std::vector<std::string> SplitSurface(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) {
      std::string token = Normalize(text.substr(start, i - start));
      if (!token.empty()) tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

std::vector<std::string> SplitFields(const std::string &line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::string Trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && IsSpace(s[b])) ++b;
  while (e > b && IsSpace(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

const char *LanguageName(Language language) {
  return language == Language::kPortuguese ? "portuguese" : "english";
}

Language ParseLanguage(std::string_view name) {
  if (name == "english" || name == "en") return Language::kEnglish;
  if (name == "portuguese" || name == "pt") return Language::kPortuguese;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown language '" + std::string(name) + "'");
}

std::string Normalize(std::string_view token) {
  size_t begin = 0, end = token.size();
  while (begin < end && (IsSpace(token[begin]) || IsPunct(token[begin]))) {
    ++begin;
  }
  while (end > begin && (IsSpace(token[end - 1]) || IsPunct(token[end - 1]))) {
    --end;
  }
  std::string result(token.substr(begin, end - begin));
  for (size_t i = 0; i < result.size(); ++i) {
    unsigned char c = result[i];
    if (c >= 'A' && c <= 'Z') {
      result[i] = static_cast<char>(c + ('a' - 'A'));
    } else if (c == 0xC3 && i + 1 < result.size()) {
      // U+00C0..U+00DE map to U+00E0..U+00FE, except U+00D7 (multiplication).
      unsigned char next = result[i + 1];
      if (next >= 0x80 && next <= 0x9E && next != 0x97) {
        result[i + 1] = static_cast<char>(next + 0x20);
      }
      ++i;
    }
  }
  return result;
}

MappingTable::MappingTable(std::vector<LexicalEntry> entries,
                           std::map<Language, std::set<std::string>> nouns,
                           std::string type_attribute)
    : entries_(std::move(entries)),
      explicit_nouns_(std::move(nouns)),
      type_attribute_(std::move(type_attribute)) {
  nouns_ = explicit_nouns_;
  for (size_t i = 0; i < entries_.size(); ++i) {
    const LexicalEntry &entry = entries_[i];
    if (entry.surface.empty() || entry.surface.size() > kMaxSurfaceTokens) {
      throw Error(ErrorCode::kInvalidArgument,
                  "lexical entry for " + entry.property.ToString() +
                      " must have 1 to 4 surface tokens");
    }
    for (const std::string &token : entry.surface) {
      if (token.empty() || Normalize(token) != token) {
        throw Error(ErrorCode::kInvalidArgument,
                    "surface token '" + token + "' is not normalized");
      }
    }
    if (entry.property.attribute.empty() || entry.property.value.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "lexical entry '" + JoinTokens(entry.surface) +
                      "' has an empty attribute or value");
    }
    Key key{entry.language, JoinTokens(entry.surface), entry.head_noun};
    if (!index_.emplace(key, i).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate lexical entry '" + std::get<1>(key) + "'" +
                      (entry.head_noun.empty()
                           ? std::string()
                           : " with head noun '" + entry.head_noun + "'") +
                      " (" + LanguageName(entry.language) + ")");
    }
    if (!entry.head_noun.empty()) {
      nouns_[entry.language].insert(entry.head_noun);
    } else if (entry.surface.size() == 1 &&
               entry.property.attribute == type_attribute_) {
      nouns_[entry.language].insert(entry.surface.front());
    }
  }
}

std::optional<Property> MappingTable::LookupPair(std::string_view word,
                                                 std::string_view noun,
                                                 Language language) const {
  if (noun.empty()) return std::nullopt;
  auto it = index_.find(Key{language, std::string(word), std::string(noun)});
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].property;
}

std::optional<Property> MappingTable::LookupWord(std::string_view word,
                                                 Language language) const {
  auto it = index_.find(Key{language, std::string(word), std::string()});
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].property;
}

std::optional<MultiwordMatch> MappingTable::LookupMultiword(
    std::span<const std::string> tokens, size_t position,
    Language language) const {
  if (position >= tokens.size()) return std::nullopt;
  size_t longest = std::min(kMaxSurfaceTokens, tokens.size() - position);
  for (size_t n = longest; n >= 1; --n) {
    auto it = index_.find(
        Key{language, JoinTokens(tokens.subspan(position, n)), std::string()});
    if (it != index_.end()) {
      return MultiwordMatch{entries_[it->second].property, n};
    }
  }
  return std::nullopt;
}

bool MappingTable::IsNoun(std::string_view word, Language language) const {
  if (word.empty()) return false;
  auto it = nouns_.find(language);
  return it != nouns_.end() && it->second.contains(std::string(word));
}

const std::set<std::string> &MappingTable::nouns(Language language) const {
  static const std::set<std::string> kEmpty;
  auto it = nouns_.find(language);
  return it == nouns_.end() ? kEmpty : it->second;
}

std::vector<std::string> MappingTable::Validate(
    const DomainSchema &schema) const {
  std::vector<std::string> violations;
  for (const LexicalEntry &entry : entries_) {
    if (!schema.IsLegal(entry.property)) {
      violations.push_back("lexical entry '" + JoinTokens(entry.surface) +
                           "' maps to " + entry.property.ToString() +
                           ", which is not legal in domain '" + schema.domain +
                           "'");
    }
  }
  return violations;
}

MappingTable ParseLexiconTsv(std::string_view text) {
  std::vector<LexicalEntry> entries;
  std::map<Language, std::set<std::string>> nouns;
  std::string type_attribute = "type";
  std::istringstream in{std::string(text)};
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '#') {
      const std::string directive = "# type-attribute:";
      if (trimmed.rfind(directive, 0) == 0) {
        type_attribute = Trim(trimmed.substr(directive.size()));
      }
      continue;
    }
    std::vector<std::string> fields = SplitFields(line);
    auto fail = [&](const std::string &why) {
      return Error(ErrorCode::kParse,
                   "lexicon line " + std::to_string(line_number) + ": " + why);
    };
    try {
      if (Trim(fields[0]) == "noun") {
        if (fields.size() != 3) throw fail("noun rows have 3 fields");
        std::string noun = Normalize(fields[2]);
        if (noun.empty()) throw fail("empty noun");
        nouns[ParseLanguage(Trim(fields[1]))].insert(noun);
        continue;
      }
      if (fields.size() != 5) {
        throw fail("expected 5 tab-separated fields, found " +
                   std::to_string(fields.size()));
      }
      LexicalEntry entry;
      entry.language = ParseLanguage(Trim(fields[0]));
      entry.surface = SplitSurface(fields[1]);
      entry.head_noun = Normalize(fields[2]);
      entry.property = {Trim(fields[3]), Trim(fields[4])};
      if (entry.surface.empty()) throw fail("empty surface form");
      entries.push_back(std::move(entry));
    } catch (const Error &e) {
      if (e.code() == ErrorCode::kParse) throw;
      throw fail(e.what());
    }
  }
  return MappingTable(std::move(entries), std::move(nouns), type_attribute);
}

std::string FormatLexiconTsv(const MappingTable &table) {
  std::ostringstream out;
  out << "# language\tsurface\thead noun\tattribute\tvalue\n";
  out << "# type-attribute: " << table.type_attribute() << "\n";
  for (const LexicalEntry &entry : table.entries()) {
    out << LanguageName(entry.language) << '\t' << JoinTokens(entry.surface)
        << '\t' << entry.head_noun << '\t' << entry.property.attribute << '\t'
        << entry.property.value << '\n';
  }
  for (const auto &[language, nouns] : table.explicit_nouns()) {
    for (const std::string &noun : nouns) {
      out << "noun\t" << LanguageName(language) << '\t' << noun << '\n';
    }
  }
  return out.str();
}

namespace {

bool HasJsonExtension(const std::string &path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

MappingTable LexiconFromJson(const nlohmann::json &doc) {
  if (doc.value("format", "") != kLexiconFormat) {
    throw Error(ErrorCode::kParse, std::string("lexicon format tag must be '") +
                                       kLexiconFormat + "'");
  }
  std::vector<LexicalEntry> entries;
  for (const nlohmann::json &e : doc.at("entries")) {
    LexicalEntry entry;
    entry.language = ParseLanguage(e.at("language").get<std::string>());
    entry.surface = SplitSurface(e.at("surface").get<std::string>());
    entry.head_noun = Normalize(e.value("head", ""));
    entry.property = {e.at("attribute").get<std::string>(),
                      e.at("value").get<std::string>()};
    entries.push_back(std::move(entry));
  }
  std::map<Language, std::set<std::string>> nouns;
  if (doc.contains("nouns")) {
    for (const auto &[language, list] : doc.at("nouns").items()) {
      for (const nlohmann::json &noun : list) {
        nouns[ParseLanguage(language)].insert(
            Normalize(noun.get<std::string>()));
      }
    }
  }
  return MappingTable(std::move(entries), std::move(nouns),
                      doc.value("type_attribute", "type"));
}

nlohmann::json LexiconToJson(const MappingTable &table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const LexicalEntry &entry : table.entries()) {
    entries.push_back({{"language", LanguageName(entry.language)},
                       {"surface", JoinTokens(entry.surface)},
                       {"head", entry.head_noun},
                       {"attribute", entry.property.attribute},
                       {"value", entry.property.value}});
  }
  nlohmann::json nouns = nlohmann::json::object();
  for (const auto &[language, list] : table.explicit_nouns()) {
    nouns[LanguageName(language)] = list;
  }
  return {{"format", kLexiconFormat},
          {"type_attribute", table.type_attribute()},
          {"entries", entries},
          {"nouns", nouns}};
}

}  // namespace

MappingTable LoadLexicon(const std::string &path) {
  std::string text = ReadFile(path);
  if (!HasJsonExtension(path)) return ParseLexiconTsv(text);
  try {
    return LexiconFromJson(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParse, path + ": " + e.what());
  }
}

void SaveLexicon(const MappingTable &table, const std::string &path) {
  if (HasJsonExtension(path)) {
    WriteFileAtomic(path, LexiconToJson(table).dump(2) + "\n");
  } else {
    WriteFileAtomic(path, FormatLexiconTsv(table));
  }
}

}  // namespace refannot
