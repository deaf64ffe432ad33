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

#include "refannot/tuna.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "refannot/error.h"
#include "refannot/fileutil.h"

namespace refannot {

namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

struct Trial {
  std::string id;
  Scene scene;
  std::string text;
  PropertySet gold;
};

std::string Attr(const pt::ptree &node, const char *name) {
  return node.get<std::string>(std::string("<xmlattr>.") + name, "");
}

std::string CollapseSpace(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word, out;
  while (in >> word) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

// Text content of `node` and its descendants, in document order.
void CollectText(const pt::ptree &node, std::string *out) {
  out->append(node.data());
  out->push_back(' ');
  for (const auto &[key, child] : node) {
    if (key == "<xmlattr>" || key == "<xmlcomment>") continue;
    CollectText(child, out);
  }
}

Property AttributeProperty(const pt::ptree &node, const std::string &where) {
  Property p{Attr(node, "NAME"), Attr(node, "VALUE")};
  if (p.attribute.empty() || p.value.empty()) {
    throw Error(ErrorCode::kParse, where + ": ATTRIBUTE without NAME or VALUE");
  }
  return p;
}

// Parses one <TRIAL> fragment. Returns false for plural trials.
bool ParseTrial(const std::string &fragment, const std::string &where,
                Trial *trial) {
  pt::ptree tree;
  std::istringstream in(fragment);
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error &e) {
    throw Error(ErrorCode::kParse, where + ": " + e.message());
  }
  const pt::ptree &root = tree.get_child("TRIAL");
  trial->id = Attr(root, "ID");
  if (trial->id.empty()) {
    throw Error(ErrorCode::kParse, where + ": TRIAL without ID");
  }
  const std::string at = where + " trial '" + trial->id + "'";
  trial->scene.id = trial->id;

  const pt::ptree *domain = nullptr;
  if (auto d = root.get_child_optional("DOMAIN")) domain = &*d;
  if (domain == nullptr) throw Error(ErrorCode::kParse, at + ": no DOMAIN");

  int targets = 0;
  for (const auto &[key, entity] : *domain) {
    if (key != "ENTITY") continue;
    SceneObject object;
    object.id = Attr(entity, "ID");
    if (object.id.empty()) {
      throw Error(ErrorCode::kParse, at + ": ENTITY without ID");
    }
    std::string type = Attr(entity, "TYPE");
    if (type == "target") {
      ++targets;
      object.role = "target";
      trial->scene.target_id = object.id;
    } else if (type != "distractor") {
      throw Error(ErrorCode::kParse,
                  at + ": ENTITY '" + object.id + "' has TYPE '" + type + "'");
    }
    for (const auto &[akey, attribute] : entity) {
      if (akey != "ATTRIBUTE") continue;
      Property p = AttributeProperty(attribute, at);
      if (p.attribute == "x-dimension" || p.attribute == "y-dimension") {
        try {
          object.geometry[p.attribute.substr(0, 1)] = std::stod(p.value);
        } catch (const std::exception &) {
          // Non-numeric positions stay properties only.
        }
      }
      object.properties.insert(std::move(p));
    }
    trial->scene.objects.push_back(std::move(object));
  }
  if (targets > 1) return false;
  if (targets == 0) throw Error(ErrorCode::kParse, at + ": no target ENTITY");

  auto words = root.get_child_optional("WORD-STRING");
  if (!words) throw Error(ErrorCode::kParse, at + ": no WORD-STRING");
  std::string text;
  CollectText(*words, &text);
  trial->text = CollapseSpace(text);
  if (trial->text.empty()) {
    throw Error(ErrorCode::kParse, at + ": empty WORD-STRING");
  }

  auto set = root.get_child_optional("ATTRIBUTE-SET");
  if (!set) throw Error(ErrorCode::kParse, at + ": no ATTRIBUTE-SET");
  for (const auto &[key, attribute] : *set) {
    if (key == "ATTRIBUTE") trial->gold.insert(AttributeProperty(attribute, at));
  }
  return true;
}

// Splits a document into its <TRIAL ...>...</TRIAL> fragments.
std::vector<std::string> TrialFragments(std::string_view doc) {
  std::vector<std::string> fragments;
  size_t pos = 0;
  while (true) {
    size_t begin = doc.find("<TRIAL", pos);
    if (begin == std::string_view::npos) break;
    char next = begin + 6 < doc.size() ? doc[begin + 6] : '\0';
    if (next != ' ' && next != '>' && next != '\t' && next != '\n' &&
        next != '\r') {
      pos = begin + 6;
      continue;
    }
    size_t end = doc.find("</TRIAL>", begin);
    if (end == std::string_view::npos) {
      fragments.emplace_back(doc.substr(begin));
      break;
    }
    end += 8;
    fragments.emplace_back(doc.substr(begin, end - begin));
    pos = end;
  }
  return fragments;
}

}  // namespace

TunaImport ImportTunaDocuments(const std::vector<std::string> &documents,
                               const std::vector<std::string> &sources,
                               const std::string &name) {
  TunaImport result;
  std::vector<Trial> trials;
  std::set<std::string> ids;
  size_t fragment_count = 0;
  for (size_t d = 0; d < documents.size(); ++d) {
    const std::string &source = d < sources.size() ? sources[d] : "document";
    for (const std::string &fragment : TrialFragments(documents[d])) {
      ++fragment_count;
      Trial trial;
      try {
        if (!ParseTrial(fragment, source, &trial)) {
          ++result.plural_skipped;
          continue;
        }
      } catch (const Error &e) {
        result.warnings.push_back(e.what());
        continue;
      } catch (const pt::ptree_error &e) {
        result.warnings.push_back(source + ": " + e.what());
        continue;
      }
      if (!ids.insert(trial.id).second) {
        result.warnings.push_back(source + ": duplicate trial id '" +
                                  trial.id + "'");
        continue;
      }
      trials.push_back(std::move(trial));
    }
  }
  if (fragment_count == 0) {
    throw Error(ErrorCode::kParse, name + ": no TRIAL elements found");
  }
  if (trials.empty()) {
    std::string message = name + ": no importable trials";
    if (!result.warnings.empty()) message += " (" + result.warnings.front() + ")";
    throw Error(ErrorCode::kParse, message);
  }

  std::map<std::string, std::vector<std::string>> values;
  auto note = [&](const Property &p) {
    std::vector<std::string> &list = values[p.attribute];
    if (std::find(list.begin(), list.end(), p.value) == list.end()) {
      list.push_back(p.value);
    }
  };
  for (const Trial &trial : trials) {
    for (const SceneObject &object : trial.scene.objects) {
      for (const Property &p : object.properties) note(p);
    }
    for (const Property &p : trial.gold) note(p);
  }

  Corpus &corpus = result.corpus;
  corpus.name = name;
  corpus.schema.domain = name;
  corpus.schema.type_attribute = values.contains("type") ? "type" : "";
  for (auto &[attribute, list] : values) {
    std::sort(list.begin(), list.end());
    corpus.schema.attributes.push_back(
        {attribute, AttributeKind::kTaxonomic, list});
  }
  for (Trial &trial : trials) {
    CorpusItem item;
    item.id = trial.id;
    item.scene_id = trial.scene.id;
    item.text = trial.text;
    item.language = Language::kEnglish;
    for (const Property &p : trial.gold) {
      item.gold.insert({corpus.schema.target_role, p});
    }
    corpus.items.push_back(std::move(item));
    corpus.scenes.push_back(std::move(trial.scene));
  }

  // Drop items whose scene breaks the schema (for instance an entity with two
  // values for one attribute) instead of failing the whole import.
  std::vector<CorpusItem> kept_items;
  std::vector<Scene> kept_scenes;
  for (size_t i = 0; i < corpus.items.size(); ++i) {
    std::vector<std::string> v = ValidateScene(corpus.scenes[i], corpus.schema);
    if (!v.empty()) {
      result.warnings.push_back(v.front());
      continue;
    }
    kept_items.push_back(std::move(corpus.items[i]));
    kept_scenes.push_back(std::move(corpus.scenes[i]));
  }
  corpus.items = std::move(kept_items);
  corpus.scenes = std::move(kept_scenes);
  if (corpus.items.empty()) {
    throw Error(ErrorCode::kParse, name + ": no importable trials");
  }
  std::vector<std::string> violations = ValidateCorpus(corpus);
  if (!violations.empty()) {
    throw Error(ErrorCode::kInternal, name + ": " + violations.front());
  }
  return result;
}

TunaImport ImportTuna(const std::string &path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(ErrorCode::kNotFound, "no such file or directory: " + path);
  }
  std::vector<std::string> sources;
  if (fs::is_directory(path, ec)) {
    for (const fs::directory_entry &entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".xml") {
        sources.push_back(entry.path().string());
      }
    }
    std::sort(sources.begin(), sources.end());
  } else {
    sources.push_back(path);
  }
  std::vector<std::string> documents;
  for (const std::string &source : sources) {
    documents.push_back(ReadFile(source));
  }
  std::string name = fs::path(path).stem().string();
  if (name.empty()) name = fs::path(path).parent_path().filename().string();
  if (name.empty()) name = "tuna";
  return ImportTunaDocuments(documents, sources, name);
}

}  // namespace refannot
