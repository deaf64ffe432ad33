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

// Referential adequacy of a parsed description in its scene, for live
// feedback to participants of an elicitation experiment.
//
// An object matches a referent's properties when it has every taxonomic
// property, and for every relational property rel-r' some other object
// matches the properties of referent r' and is linked to it by rel in the
// scene. Relations are read from the scene; nothing is inferred from
// geometry.

#ifndef REFANNOT_FEEDBACK_H_
#define REFANNOT_FEEDBACK_H_

#include <set>
#include <string>
#include <vector>

#include "refannot/domain.h"
#include "refannot/parser.h"

namespace refannot {

enum class FeedbackStatus { kUnique, kAmbiguous, kIllFormed, kEmpty };

const char *FeedbackStatusName(FeedbackStatus status);
FeedbackStatus ParseFeedbackStatus(std::string_view name);

struct AttributeConflict {
  std::string role;
  std::string attribute;
  std::vector<std::string> values;

  bool operator==(const AttributeConflict &) const = default;
};

struct FeedbackVerdict {
  FeedbackStatus status = FeedbackStatus::kEmpty;
  // Objects matching everything said about the target.
  std::set<std::string> matching_ids;
  // Taxonomic attributes given more than one value for one referent.
  std::vector<AttributeConflict> conflicts;
  // Target properties that do not hold of the target.
  std::vector<Property> false_properties;
  std::vector<std::string> unknown_tokens;

  bool operator==(const FeedbackVerdict &) const = default;
};

// Precedence: empty, then ill-formed, then ambiguous, then unique.
FeedbackVerdict Check(const AnnotationResult &result, const Scene &scene,
                      const DomainSchema &schema);

}  // namespace refannot

#endif  // REFANNOT_FEEDBACK_H_
