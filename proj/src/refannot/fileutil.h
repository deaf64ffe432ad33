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

// Whole-file reads and crash-safe writes.

#ifndef REFANNOT_FILEUTIL_H_
#define REFANNOT_FILEUTIL_H_

#include <string>
#include <string_view>

namespace refannot {

// Throws Error(kNotFound) when the file does not exist, Error(kIo) otherwise.
std::string ReadFile(const std::string &path);

// Writes to a temporary file in the same directory, syncs it and renames it
// over `path`.
void WriteFileAtomic(const std::string &path, std::string_view content);

// Appends `line` plus a newline with a single write(2) on an O_APPEND
// descriptor and syncs before returning.
void AppendLineDurable(const std::string &path, std::string_view line);

}  // namespace refannot

#endif  // REFANNOT_FILEUTIL_H_
