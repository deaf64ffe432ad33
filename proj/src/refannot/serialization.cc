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

#include "refannot/serialization.h"

#include "refannot/error.h"

namespace refannot {

Json ToJson(const Property &p) {
  return {{"attribute", p.attribute}, {"value", p.value}};
}

Property PropertyFromJson(const Json &j) {
  return {j.at("attribute").get<std::string>(), j.at("value").get<std::string>()};
}

Json ToJson(const RolePropertySet &set) {
  Json list = Json::array();
  for (const RoleProperty &rp : set) {
    list.push_back({{"role", rp.role},
                    {"attribute", rp.property.attribute},
                    {"value", rp.property.value}});
  }
  return list;
}

RolePropertySet RolePropertySetFromJson(const Json &j,
                                        const std::string &default_role) {
  RolePropertySet set;
  for (const Json &item : j) {
    set.insert({item.value("role", default_role), PropertyFromJson(item)});
  }
  return set;
}

Json ToJson(const DomainSchema &schema) {
  Json attributes = Json::array();
  for (const AttributeDef &def : schema.attributes) {
    Json a = {{"name", def.name}, {"kind", AttributeKindName(def.kind)}};
    if (def.kind == AttributeKind::kTaxonomic || !def.values.empty()) {
      a["values"] = def.values;
    }
    attributes.push_back(std::move(a));
  }
  return {{"domain", schema.domain},
          {"attributes", attributes},
          {"target_role", schema.target_role},
          {"roles", schema.landmark_roles},
          {"type_attribute", schema.type_attribute}};
}

DomainSchema SchemaFromJson(const Json &j) {
  DomainSchema schema;
  schema.domain = j.at("domain").get<std::string>();
  for (const Json &a : j.at("attributes")) {
    AttributeDef def;
    def.name = a.at("name").get<std::string>();
    def.kind = ParseAttributeKind(a.value("kind", "taxonomic"));
    if (a.contains("values")) {
      def.values = a.at("values").get<std::vector<std::string>>();
    }
    schema.attributes.push_back(std::move(def));
  }
  schema.target_role = j.value("target_role", "target");
  if (j.contains("roles")) {
    schema.landmark_roles = j.at("roles").get<std::vector<std::string>>();
  }
  schema.type_attribute = j.value("type_attribute", "type");
  return schema;
}

Json ToJson(const Scene &scene) {
  Json objects = Json::array();
  for (const SceneObject &object : scene.objects) {
    Json properties = Json::array();
    for (const Property &p : object.properties) properties.push_back(ToJson(p));
    Json o = {{"id", object.id}, {"properties", properties}};
    o["role"] = object.role.empty() ? Json(nullptr) : Json(object.role);
    if (!object.geometry.empty()) o["geometry"] = object.geometry;
    objects.push_back(std::move(o));
  }
  return {{"id", scene.id}, {"target", scene.target_id}, {"objects", objects}};
}

Scene SceneFromJson(const Json &j) {
  Scene scene;
  scene.id = j.at("id").get<std::string>();
  scene.target_id = j.at("target").get<std::string>();
  for (const Json &o : j.at("objects")) {
    SceneObject object;
    object.id = o.at("id").get<std::string>();
    if (o.contains("role") && !o.at("role").is_null()) {
      object.role = o.at("role").get<std::string>();
    }
    for (const Json &p : o.at("properties")) {
      object.properties.insert(PropertyFromJson(p));
    }
    if (o.contains("geometry")) {
      object.geometry = o.at("geometry").get<std::map<std::string, double>>();
    }
    scene.objects.push_back(std::move(object));
  }
  return scene;
}

Json ToJson(const AnnotationResult &result) {
  Json segments = Json::array();
  for (const Segment &segment : result.segments) {
    Json s = {{"role", segment.role},
              {"tokens", segment.tokens},
              {"positions", segment.positions}};
    s["trigger"] = segment.trigger ? ToJson(*segment.trigger) : Json(nullptr);
    if (segment.trigger) {
      s["trigger_begin"] = segment.trigger_begin;
      s["trigger_length"] = segment.trigger_length;
    }
    segments.push_back(std::move(s));
  }
  Json spans = Json::array();
  for (const MatchedSpan &span : result.spans) {
    Json s = {{"begin", span.begin},
              {"length", span.length},
              {"role", span.role},
              {"attribute", span.property.attribute},
              {"value", span.property.value},
              {"kind", SpanKindName(span.kind)}};
    if (!span.head_noun.empty()) s["head_noun"] = span.head_noun;
    spans.push_back(std::move(s));
  }
  Json discarded = Json::array();
  for (const DiscardedToken &token : result.discarded) {
    discarded.push_back({{"token", token.token}, {"position", token.position}});
  }
  return {{"tokens", result.tokens},
          {"language", LanguageName(result.language)},
          {"properties", ToJson(result.properties)},
          {"segments", segments},
          {"spans", spans},
          {"discarded", discarded}};
}

AnnotationResult AnnotationResultFromJson(const Json &j) {
  AnnotationResult result;
  result.tokens = j.at("tokens").get<std::vector<std::string>>();
  result.language = ParseLanguage(j.value("language", "english"));
  result.properties = RolePropertySetFromJson(j.at("properties"), "target");
  for (const Json &s : j.value("segments", Json::array())) {
    Segment segment;
    segment.role = s.at("role").get<std::string>();
    segment.tokens = s.at("tokens").get<std::vector<std::string>>();
    segment.positions = s.at("positions").get<std::vector<size_t>>();
    if (s.contains("trigger") && !s.at("trigger").is_null()) {
      segment.trigger = PropertyFromJson(s.at("trigger"));
      segment.trigger_begin = s.value("trigger_begin", size_t{0});
      segment.trigger_length = s.value("trigger_length", size_t{0});
    }
    result.segments.push_back(std::move(segment));
  }
  for (const Json &s : j.value("spans", Json::array())) {
    MatchedSpan span;
    span.begin = s.at("begin").get<size_t>();
    span.length = s.at("length").get<size_t>();
    span.role = s.at("role").get<std::string>();
    span.property = PropertyFromJson(s);
    std::string kind = s.value("kind", "word");
    span.kind = kind == "trigger"  ? SpanKind::kTrigger
                : kind == "phrase" ? SpanKind::kPhrase
                : kind == "pair"   ? SpanKind::kPair
                                   : SpanKind::kWord;
    span.head_noun = s.value("head_noun", "");
    result.spans.push_back(std::move(span));
  }
  for (const Json &d : j.value("discarded", Json::array())) {
    result.discarded.push_back(
        {d.at("token").get<std::string>(), d.at("position").get<size_t>()});
  }
  return result;
}

Json ToJson(const FeedbackVerdict &verdict) {
  Json conflicts = Json::array();
  for (const AttributeConflict &c : verdict.conflicts) {
    conflicts.push_back(
        {{"role", c.role}, {"attribute", c.attribute}, {"values", c.values}});
  }
  Json false_properties = Json::array();
  for (const Property &p : verdict.false_properties) {
    false_properties.push_back(ToJson(p));
  }
  return {{"status", FeedbackStatusName(verdict.status)},
          {"matching_ids", verdict.matching_ids},
          {"conflicts", conflicts},
          {"false_properties", false_properties},
          {"unknown_tokens", verdict.unknown_tokens}};
}

FeedbackVerdict VerdictFromJson(const Json &j) {
  FeedbackVerdict verdict;
  verdict.status = ParseFeedbackStatus(j.at("status").get<std::string>());
  verdict.matching_ids = j.at("matching_ids").get<std::set<std::string>>();
  for (const Json &c : j.at("conflicts")) {
    verdict.conflicts.push_back({c.at("role").get<std::string>(),
                                 c.at("attribute").get<std::string>(),
                                 c.at("values").get<std::vector<std::string>>()});
  }
  for (const Json &p : j.at("false_properties")) {
    verdict.false_properties.push_back(PropertyFromJson(p));
  }
  verdict.unknown_tokens = j.at("unknown_tokens").get<std::vector<std::string>>();
  return verdict;
}

Json ToJson(const EvalReport &report) {
  Json items = Json::array();
  for (const ItemScore &item : report.items) {
    items.push_back(
        {{"id", item.id}, {"dice", item.dice}, {"exact", item.exact}});
  }
  return {{"format", "refannot-report/1"},
          {"method", report.method},
          {"corpus", report.corpus},
          {"role_aware", report.role_aware},
          {"n", report.n()},
          {"mean_dice", report.mean_dice},
          {"accuracy", report.accuracy},
          {"items", items}};
}

EvalReport ReportFromJson(const Json &j) {
  EvalReport report;
  report.method = j.value("method", "");
  report.corpus = j.value("corpus", "");
  report.role_aware = j.value("role_aware", false);
  report.mean_dice = j.at("mean_dice").get<double>();
  report.accuracy = j.at("accuracy").get<double>();
  for (const Json &item : j.at("items")) {
    report.items.push_back({item.at("id").get<std::string>(),
                            item.at("dice").get<double>(),
                            item.at("exact").get<bool>()});
  }
  return report;
}

Json ToJson(const ComparisonSummary &s) {
  Json j = {{"format", "refannot-comparison/1"},
            {"corpus", s.corpus},
            {"n", s.n},
            {"alpha", s.alpha},
            {"methods", {s.method_a, s.method_b}},
            {"mean_dice", {s.mean_dice_a, s.mean_dice_b}},
            {"accuracy", {s.accuracy_a, s.accuracy_b}},
            {"dice_direction", DirectionName(s.dice_direction)},
            {"accuracy_direction", DirectionName(s.accuracy_direction)},
            {"dice_significant", s.dice_significant},
            {"accuracy_significant", s.accuracy_significant}};
  if (s.wilcoxon) {
    j["wilcoxon"] = {{"W", s.wilcoxon->w},
                     {"Z", s.wilcoxon->z},
                     {"p", s.wilcoxon->p},
                     {"nonzero", s.wilcoxon->nonzero}};
  } else {
    j["wilcoxon"] = {{"note", s.wilcoxon_note}};
  }
  if (s.chi_square) {
    j["chi_square"] = {{"chi2", s.chi_square->chi2},
                       {"df", s.chi_square->df},
                       {"p", s.chi_square->p}};
  } else {
    j["chi_square"] = {{"note", s.chi_square_note}};
  }
  return j;
}

}  // namespace refannot
