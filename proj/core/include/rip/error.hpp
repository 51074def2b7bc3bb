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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rip {

// Base class for every error raised by the library. Callers that only need a
// diagnostic can catch this; the subclasses carry machine-checkable detail.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition on an argument was violated (bad block size, shape
// mismatch, out-of-range angle, block outside the image, ...).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// X X^T + lambda I could not be factorized. Raised by ridge_update when
// lambda == 0 and the cluster's references are rank deficient.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, int cluster)
      : Error(what), cluster_(cluster) {}
  int cluster() const { return cluster_; }

 private:
  int cluster_;
};

class ModelFormatError : public Error {
 public:
  enum class Kind {
    kIo,
    kBadMagic,
    kVersionMismatch,
    kTruncated,
    kShapeInconsistency,
  };

  ModelFormatError(Kind kind, const std::string& what);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(ModelFormatError::Kind kind);

class ImageFormatError : public Error {
 public:
  explicit ImageFormatError(const std::string& what) : Error(what) {}
};

}  // namespace rip
