// Copyright 2026 The PulseForge Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace pulseforge {

/// Base class of every error thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an API precondition (bad dimension, unknown name, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An input value failed a numerical validity check.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Calibration violates 0 < T2 <= 2 T1 or a related physical bound.
class PhysicalityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed JSON; carries the byte offset reported by the parser.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what), byte_offset_(byte_offset) {}

  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Well-formed JSON that does not follow the expected document schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Lookup of a named entity (qubit id, gate name) failed.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Reading a local file or URL failed.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, std::string source)
      : Error(what), source_(std::move(source)) {}

  const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
};

}  // namespace pulseforge
