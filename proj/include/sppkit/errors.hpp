// Copyright 2026 The sppkit Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace sppkit {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value violates its documented range.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// A scalar argument lies outside the domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operands have incompatible shapes.
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed at the OS level.
class IoError : public Error {
 public:
  using Error::Error;
};

/// A file was readable but its contents are not in the expected format
/// (bad magic, unsupported version, unsupported encoding).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A file ended before all declared content could be read.
class TruncatedError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Structurally valid content that fails semantic validation
/// (missing tensors, wrong tensor shapes, inconsistent statistics).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sppkit
