// Copyright 2026 The qcdbounds Authors
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

namespace qcd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside its documented domain (probability not in [0,1], bad dimension, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A size guard tripped; the message names the scalable alternative.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A computed result contradicts a proven ordering or an independent oracle.
class InvariantError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require_probability(double q, const char* name) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0,1], got " + std::to_string(q));
  }
}

}  // namespace detail
}  // namespace qcd
