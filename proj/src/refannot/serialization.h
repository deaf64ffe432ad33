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

// JSON forms of the library's value types. These are the bodies of corpus,
// annotation and report files and of the service's responses.

#ifndef REFANNOT_SERIALIZATION_H_
#define REFANNOT_SERIALIZATION_H_

#include "json.hpp"
#include "refannot/domain.h"
#include "refannot/evaluation.h"
#include "refannot/feedback.h"
#include "refannot/parser.h"

namespace refannot {

using Json = nlohmann::json;

Json ToJson(const Property &p);
Property PropertyFromJson(const Json &j);

// [{"role": ..., "attribute": ..., "value": ...}]. A missing role reads as
// `default_role`.
Json ToJson(const RolePropertySet &set);
RolePropertySet RolePropertySetFromJson(const Json &j,
                                        const std::string &default_role);

Json ToJson(const DomainSchema &schema);
DomainSchema SchemaFromJson(const Json &j);

Json ToJson(const Scene &scene);
Scene SceneFromJson(const Json &j);

Json ToJson(const AnnotationResult &result);
AnnotationResult AnnotationResultFromJson(const Json &j);
Json ToJson(const FeedbackVerdict &verdict);
FeedbackVerdict VerdictFromJson(const Json &j);

Json ToJson(const EvalReport &report);
EvalReport ReportFromJson(const Json &j);
Json ToJson(const ComparisonSummary &summary);

}  // namespace refannot

#endif  // REFANNOT_SERIALIZATION_H_
