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

#include "refannot/feedback.h"

#include <map>

#include "refannot/error.h"

namespace refannot {

namespace {

class Matcher {
 public:
  Matcher(const RolePropertySet &properties, const Scene &scene,
          const DomainSchema &schema)
      : scene_(scene), schema_(schema) {
    for (const RoleProperty &rp : properties) {
      by_role_[rp.role].push_back(rp.property);
    }
  }

  bool Matches(const SceneObject &object, const std::string &role,
               size_t depth = 0) const {
    auto it = by_role_.find(role);
    if (it == by_role_.end()) return true;
    for (const Property &p : it->second) {
      if (!Holds(object, p, depth)) return false;
    }
    return true;
  }

  bool Holds(const SceneObject &object, const Property &p,
             size_t depth = 0) const {
    if (!IsRelationalAttribute(p.attribute)) {
      return object.properties.contains(p);
    }
    // Relations form a chain over the description's referents; the bound
    // only protects against cyclic role assignments.
    if (depth > by_role_.size()) return false;
    for (const SceneObject &other : scene_.objects) {
      if (&other == &object) continue;
      if (Related(object, p.attribute, other) &&
          Matches(other, p.value, depth + 1)) {
        return true;
      }
    }
    return false;
  }

 private:
  bool IsRelationalAttribute(const std::string &attribute) const {
    const AttributeDef *def = schema_.FindAttribute(attribute);
    return def != nullptr && def->kind == AttributeKind::kRelational;
  }

  static bool Related(const SceneObject &from, const std::string &attribute,
                      const SceneObject &to) {
    for (const Property &q : from.properties) {
      if (q.attribute != attribute) continue;
      if (q.value == to.id || (!to.role.empty() && q.value == to.role)) {
        return true;
      }
    }
    return false;
  }

  const Scene &scene_;
  const DomainSchema &schema_;
  std::map<std::string, std::vector<Property>> by_role_;
};

}  // namespace

const char *FeedbackStatusName(FeedbackStatus status) {
  switch (status) {
    case FeedbackStatus::kUnique: return "unique";
    case FeedbackStatus::kAmbiguous: return "ambiguous";
    case FeedbackStatus::kIllFormed: return "ill_formed";
    case FeedbackStatus::kEmpty: return "empty";
  }
  return "empty";
}

FeedbackStatus ParseFeedbackStatus(std::string_view name) {
  for (FeedbackStatus status :
       {FeedbackStatus::kUnique, FeedbackStatus::kAmbiguous,
        FeedbackStatus::kIllFormed, FeedbackStatus::kEmpty}) {
    if (name == FeedbackStatusName(status)) return status;
  }
  throw Error(ErrorCode::kParse,
              "unknown feedback status '" + std::string(name) + "'");
}

FeedbackVerdict Check(const AnnotationResult &result, const Scene &scene,
                      const DomainSchema &schema) {
  FeedbackVerdict verdict;
  for (const DiscardedToken &token : result.discarded) {
    verdict.unknown_tokens.push_back(token.token);
  }

  std::map<std::pair<std::string, std::string>, std::vector<std::string>>
      values;
  for (const RoleProperty &rp : result.properties) {
    const AttributeDef *def = schema.FindAttribute(rp.property.attribute);
    if (def != nullptr && def->kind == AttributeKind::kRelational) continue;
    values[{rp.role, rp.property.attribute}].push_back(rp.property.value);
  }
  for (auto &[key, list] : values) {
    if (list.size() > 1) verdict.conflicts.push_back({key.first, key.second, list});
  }

  Matcher matcher(result.properties, scene, schema);
  for (const SceneObject &object : scene.objects) {
    if (matcher.Matches(object, schema.target_role)) {
      verdict.matching_ids.insert(object.id);
    }
  }

  const PropertySet target_properties =
      PropertiesOf(result.properties, schema.target_role);
  if (target_properties.empty()) {
    verdict.status = FeedbackStatus::kEmpty;
    return verdict;
  }

  const SceneObject *target = scene.Target();
  for (const Property &p : target_properties) {
    if (target == nullptr || !matcher.Holds(*target, p)) {
      verdict.false_properties.push_back(p);
    }
  }

  if (!verdict.conflicts.empty() || !verdict.false_properties.empty()) {
    verdict.status = FeedbackStatus::kIllFormed;
  } else if (verdict.matching_ids.size() == 1) {
    verdict.status = FeedbackStatus::kUnique;
  } else {
    verdict.status = FeedbackStatus::kAmbiguous;
  }
  return verdict;
}

}  // namespace refannot
