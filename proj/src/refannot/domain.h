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

// Domain model: attributes, values, objects and scenes of a reference
// domain, plus the property-set algebra used by the rest of the library.
//
// A property is an attribute-value pair such as colour-red. Taxonomic
// attributes take values from a closed list declared in the schema.
// Relational attributes (near, above, ...) take a role identifier as their
// value when they appear in a description (near-lm), and an object id or a
// role identifier when they appear in a scene.

#ifndef REFANNOT_DOMAIN_H_
#define REFANNOT_DOMAIN_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace refannot {

enum class AttributeKind { kTaxonomic, kRelational };

const char *AttributeKindName(AttributeKind kind);
AttributeKind ParseAttributeKind(std::string_view name);

struct AttributeDef {
  // Opaque identifier; dotted names such as "hair.colour" are not parsed.
  std::string name;
  AttributeKind kind = AttributeKind::kTaxonomic;
  // Legal values of a taxonomic attribute. Empty for relational attributes.
  std::vector<std::string> values;

  bool operator==(const AttributeDef &) const = default;
};

struct Property {
  std::string attribute;
  std::string value;

  auto operator<=>(const Property &) const = default;
  bool operator==(const Property &) const = default;

  // "attribute-value", for display and diagnostics.
  std::string ToString() const;
};

using PropertySet = std::set<Property>;

// Per-token label: the property a token expresses, or nullopt.
using Label = std::optional<Property>;

PropertySet Union(const PropertySet &a, const PropertySet &b);
bool PropertySetsIdentical(const PropertySet &a, const PropertySet &b);

// A property attributed to one referent of a description: the target or one
// of the landmarks.
struct RoleProperty {
  std::string role;
  Property property;

  auto operator<=>(const RoleProperty &) const = default;
  bool operator==(const RoleProperty &) const = default;
};

using RolePropertySet = std::set<RoleProperty>;

// Drops the role tags.
PropertySet Flatten(const RolePropertySet &set);
// Properties carried by one referent.
PropertySet PropertiesOf(const RolePropertySet &set, std::string_view role);

class DomainSchema {
 public:
  std::string domain;
  std::vector<AttributeDef> attributes;
  // Role identifier of the described object.
  std::string target_role = "target";
  // Landmark role identifiers, in the order landmarks are introduced.
  std::vector<std::string> landmark_roles = {"lm"};
  // Attribute whose values name object types. Words mapped to it are nouns.
  std::string type_attribute = "type";

  const AttributeDef *FindAttribute(std::string_view name) const;
  bool IsRole(std::string_view id) const;

  // Role of the k-th landmark (k >= 1). Undeclared positions continue the
  // numbering of the first landmark role: lm, lm2, lm3, ...
  std::string LandmarkRole(int k) const;

  // Throws Error(kSchemaViolation) for unknown attributes.
  bool IsRelational(std::string_view attribute) const;

  bool IsLegal(const Property &p) const;

  bool operator==(const DomainSchema &) const = default;
};

// Empty iff the schema is well formed. Each entry names the offending
// attribute or role.
std::vector<std::string> ValidateSchema(const DomainSchema &schema);

bool IsRelational(const Property &p, const DomainSchema &schema);

struct SceneObject {
  std::string id;
  std::string role;  // empty when the object plays no declared role
  PropertySet properties;
  // Conventional rendering attributes (x, y, ...). Not interpreted here.
  std::map<std::string, double> geometry;

  bool operator==(const SceneObject &) const = default;
};

struct Scene {
  std::string id;
  std::vector<SceneObject> objects;
  std::string target_id;

  const SceneObject *FindObject(std::string_view id) const;
  const SceneObject *Target() const { return FindObject(target_id); }

  bool operator==(const Scene &) const = default;
};

std::vector<std::string> ValidateScene(const Scene &scene,
                                       const DomainSchema &schema);

}  // namespace refannot

#endif  // REFANNOT_DOMAIN_H_
