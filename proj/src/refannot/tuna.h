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

// Import of TUNA-style trial documents. Each TRIAL element carries a DOMAIN of
// ENTITY elements (one TYPE="target", the rest distractors) with ATTRIBUTE
// markup, the participant's WORD-STRING and the ATTRIBUTE-SET the annotators
// assigned to it:
//
//   <TRIAL ID="t1">
//     <DOMAIN>
//       <ENTITY ID="e1" TYPE="target">
//         <ATTRIBUTE NAME="colour" VALUE="red"/>
//         <ATTRIBUTE NAME="type" VALUE="couch"/>
//       </ENTITY>
//       ...
//     </DOMAIN>
//     <WORD-STRING>the red couch</WORD-STRING>
//     <ATTRIBUTE-SET>
//       <ATTRIBUTE NAME="colour" VALUE="red"/>
//       <ATTRIBUTE NAME="type" VALUE="couch"/>
//     </ATTRIBUTE-SET>
//   </TRIAL>
//
// Attribute names are kept verbatim. The schema is built from the attributes
// and values seen; all attributes are taxonomic.

#ifndef REFANNOT_TUNA_H_
#define REFANNOT_TUNA_H_

#include <string>
#include <string_view>
#include <vector>

#include "refannot/corpus.h"

namespace refannot {

struct TunaImport {
  Corpus corpus;
  // Trials with more than one target entity.
  size_t plural_skipped = 0;
  // One message per trial that could not be imported.
  std::vector<std::string> warnings;
};

// `path` is a trial file or a directory of them (*.xml, read in name order).
// Throws Error(kNotFound) for a missing path and Error(kParse) when no trial
// yields an item.
TunaImport ImportTuna(const std::string &path);

// Same, over in-memory documents. `sources` name the documents in messages.
TunaImport ImportTunaDocuments(const std::vector<std::string> &documents,
                               const std::vector<std::string> &sources,
                               const std::string &name);

}  // namespace refannot

#endif  // REFANNOT_TUNA_H_
