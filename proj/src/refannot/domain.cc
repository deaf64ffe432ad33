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

#include "refannot/domain.h"

#include <algorithm>

#include "refannot/error.h"

namespace refannot {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kNotFound: return "not found";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kSchemaViolation: return "schema violation";
    case ErrorCode::kStatistics: return "statistics error";
    case ErrorCode::kConflict: return "conflict";
    case ErrorCode::kRetryable: return "retryable";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

const char *AttributeKindName(AttributeKind kind) {
  return kind == AttributeKind::kRelational ? "relational" : "taxonomic";
}

AttributeKind ParseAttributeKind(std::string_view name) {
  if (name == "taxonomic") return AttributeKind::kTaxonomic;
  if (name == "relational") return AttributeKind::kRelational;
  throw Error(ErrorCode::kParse,
              "unknown attribute kind '" + std::string(name) + "'");
}

std::string Property::ToString() const { return attribute + "-" + value; }

PropertySet Union(const PropertySet &a, const PropertySet &b) {
  PropertySet result = a;
  result.insert(b.begin(), b.end());
  return result;
}

bool PropertySetsIdentical(const PropertySet &a, const PropertySet &b) {
  return a == b;
}

PropertySet Flatten(const RolePropertySet &set) {
  PropertySet result;
  for (const RoleProperty &rp : set) result.insert(rp.property);
  return result;
}

PropertySet PropertiesOf(const RolePropertySet &set, std::string_view role) {
  PropertySet result;
  for (const RoleProperty &rp : set) {
    if (rp.role == role) result.insert(rp.property);
  }
  return result;
}

const AttributeDef *DomainSchema::FindAttribute(std::string_view name) const {
  for (const AttributeDef &def : attributes) {
    if (def.name == name) return &def;
  }
  return nullptr;
}

bool DomainSchema::IsRole(std::string_view id) const {
  if (id == target_role) return true;
  return std::find(landmark_roles.begin(), landmark_roles.end(), id) !=
         landmark_roles.end();
}

std::string DomainSchema::LandmarkRole(int k) const {
  if (k >= 1 && static_cast<size_t>(k) <= landmark_roles.size()) {
    return landmark_roles[k - 1];
  }
  std::string base = landmark_roles.empty() ? "lm" : landmark_roles.front();
  return k <= 1 ? base : base + std::to_string(k);
}

bool DomainSchema::IsRelational(std::string_view attribute) const {
  const AttributeDef *def = FindAttribute(attribute);
  if (def == nullptr) {
    throw Error(ErrorCode::kSchemaViolation,
                "attribute '" + std::string(attribute) +
                    "' is not declared in domain '" + domain + "'");
  }
  return def->kind == AttributeKind::kRelational;
}

bool DomainSchema::IsLegal(const Property &p) const {
  const AttributeDef *def = FindAttribute(p.attribute);
  if (def == nullptr) return false;
  if (def->kind == AttributeKind::kRelational) return IsRole(p.value);
  return std::find(def->values.begin(), def->values.end(), p.value) !=
         def->values.end();
}

bool IsRelational(const Property &p, const DomainSchema &schema) {
  return schema.IsRelational(p.attribute);
}

std::vector<std::string> ValidateSchema(const DomainSchema &schema) {
  std::vector<std::string> violations;
  std::set<std::string> seen;
  std::set<std::string> reported;
  for (const AttributeDef &def : schema.attributes) {
    if (def.name.empty()) {
      violations.push_back("attribute with empty name");
      continue;
    }
    if (!seen.insert(def.name).second) {
      if (reported.insert(def.name).second) {
        violations.push_back("duplicate attribute '" + def.name + "'");
      }
      continue;
    }
    if (def.kind == AttributeKind::kRelational) {
      if (!def.values.empty()) {
        violations.push_back("relational attribute '" + def.name +
                             "' declares taxonomic values");
      }
    } else {
      if (def.values.empty()) {
        violations.push_back("taxonomic attribute '" + def.name +
                             "' has no legal values");
      }
      std::set<std::string> values;
      for (const std::string &v : def.values) {
        if (!values.insert(v).second) {
          violations.push_back("attribute '" + def.name +
                               "' repeats value '" + v + "'");
        }
      }
    }
  }

  if (schema.target_role.empty()) violations.push_back("empty target role");
  std::set<std::string> roles = {schema.target_role};
  for (const std::string &role : schema.landmark_roles) {
    if (role.empty() || !roles.insert(role).second) {
      violations.push_back("invalid or duplicate role '" + role + "'");
    }
  }

  if (!schema.type_attribute.empty()) {
    const AttributeDef *type = schema.FindAttribute(schema.type_attribute);
    if (type == nullptr || type->kind != AttributeKind::kTaxonomic) {
      violations.push_back("type attribute '" + schema.type_attribute +
                           "' is not a declared taxonomic attribute");
    }
  }
  return violations;
}

const SceneObject *Scene::FindObject(std::string_view object_id) const {
  for (const SceneObject &object : objects) {
    if (object.id == object_id) return &object;
  }
  return nullptr;
}

std::vector<std::string> ValidateScene(const Scene &scene,
                                       const DomainSchema &schema) {
  std::vector<std::string> violations;
  const std::string where = "scene '" + scene.id + "': ";
  std::set<std::string> ids;
  for (const SceneObject &object : scene.objects) {
    if (!ids.insert(object.id).second) {
      violations.push_back(where + "duplicate object id '" + object.id + "'");
    }
  }
  if (std::count_if(scene.objects.begin(), scene.objects.end(),
                    [&](const SceneObject &o) {
                      return o.id == scene.target_id;
                    }) != 1) {
    violations.push_back(where + "target '" + scene.target_id +
                         "' does not resolve to exactly one object");
  }

  for (const SceneObject &object : scene.objects) {
    const std::string at = where + "object '" + object.id + "': ";
    if (!object.role.empty() && !schema.IsRole(object.role)) {
      violations.push_back(at + "undeclared role '" + object.role + "'");
    }
    std::set<std::string> taxonomic_seen;
    for (const Property &p : object.properties) {
      const AttributeDef *def = schema.FindAttribute(p.attribute);
      if (def == nullptr) {
        violations.push_back(at + "unknown attribute '" + p.attribute + "'");
        continue;
      }
      if (def->kind == AttributeKind::kRelational) {
        if (!ids.contains(p.value) && !schema.IsRole(p.value)) {
          violations.push_back(at + "relation " + p.ToString() +
                               " names neither an object nor a role");
        }
        continue;
      }
      if (!schema.IsLegal(p)) {
        violations.push_back(at + "illegal value " + p.ToString());
      }
      if (!taxonomic_seen.insert(p.attribute).second) {
        violations.push_back(at + "more than one value for '" + p.attribute +
                             "'");
      }
    }
  }
  return violations;
}

}  // namespace refannot
