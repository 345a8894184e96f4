// Copyright 2026 The OrField Authors
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

#ifndef ORFIELD_ERROR_HPP_
#define ORFIELD_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace orfield {

// Values mirror orf_status in orfield.h.
enum class ErrorCode {
  kInvalidArgument = 1,
  kOutOfRange = 2,
  kDegenerate = 3,
  kGeometryMismatch = 4,
  kNoPath = 5,
  kParse = 6,
  kIo = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orfield

#endif  // ORFIELD_ERROR_HPP_
