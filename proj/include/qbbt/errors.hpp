// Copyright 2026 The qbbt Authors
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

#include <stdexcept>
#include <string>

namespace qbbt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix or register dimension is invalid or exceeds a configured cap.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A function argument lies outside its documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two programs (or a program and a state) disagree on register size.
class RegisterMismatch : public Error {
 public:
  using Error::Error;
};

/// The program contains a non-unitary instruction.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// Sampled or exact simulation hit a numerically degenerate state.
class SimulationError : public Error {
 public:
  using Error::Error;
};

/// A resource cap (branch count, qubit count) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Two independent exact routes disagree, or a suite label contradicts the oracle.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (program JSON, manifest, plan).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbbt
