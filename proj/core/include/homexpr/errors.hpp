// Copyright 2026 The homexpr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homexpr {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Bad user-supplied value (parameter out of range, unknown name, malformed file).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input parse failure for one of the JSON file formats.
class ParseError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A dense-size or evaluation-count guard was exceeded. The computation was refused.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A matrix or vector failed its unitarity / normalization / finiteness invariant.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Failure of finite-group verification. Carries the offending element indices.
class GroupError : public Error {
 public:
  enum class Kind { kMissingIdentity, kNotClosed, kMissingInverse, kDuplicateElements };

  GroupError(Kind kind, std::size_t first, std::size_t second, const std::string& what)
      : Error(what), kind_(kind), first_(first), second_(second) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  Kind kind_;
  std::size_t first_;
  std::size_t second_;
};

}  // namespace homexpr
