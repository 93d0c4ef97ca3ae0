// Copyright 2026 The gentyp Authors
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

#ifndef GENTYP_ERRORS_H
#define GENTYP_ERRORS_H

#include <stdexcept>
#include <string>

namespace gentyp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero dimension, mismatched dimensions, or inconsistent factorization.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside its documented domain (excitation count, block count, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operator fails a state invariant (hermiticity, positivity, unit trace).
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Map is not completely positive or not trace preserving.
class NotCptpError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds the dense-path size limits.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (JSON channel files, configs).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace gentyp

#endif  // GENTYP_ERRORS_H
