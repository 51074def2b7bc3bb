// Copyright 2026 The RIP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rip/error.hpp"

namespace rip {

std::string_view to_string(ModelFormatError::Kind kind) {
  switch (kind) {
    case ModelFormatError::Kind::kIo:
      return "i/o error";
    case ModelFormatError::Kind::kBadMagic:
      return "bad magic";
    case ModelFormatError::Kind::kVersionMismatch:
      return "version mismatch";
    case ModelFormatError::Kind::kTruncated:
      return "truncated model file";
    case ModelFormatError::Kind::kShapeInconsistency:
      return "shape inconsistency";
  }
  return "unknown";
}

ModelFormatError::ModelFormatError(Kind kind, const std::string& what)
    : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace rip
