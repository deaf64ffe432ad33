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

#ifndef REFANNOT_ERROR_H_
#define REFANNOT_ERROR_H_

#include <stdexcept>
#include <string>

namespace refannot {

// Error categories. These map one-to-one onto the status codes of the C API.
enum class ErrorCode {
  kInvalidArgument = 1,
  kNotFound = 2,
  kIo = 3,
  kParse = 4,
  kSchemaViolation = 5,
  kStatistics = 6,
  kConflict = 7,
  kRetryable = 8,
  kInternal = 9,
};

const char *ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace refannot

#endif  // REFANNOT_ERROR_H_
