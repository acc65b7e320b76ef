// Copyright 2026 The initdet Authors.
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

#ifndef INITDET_ERROR_H_
#define INITDET_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace initdet {

// Base class for all toolkit errors. The CLI maps each subclass to an exit
// code: usage 1, integrity/parse 2, numerical 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char *kind() const { return "error"; }
};

// Malformed input record. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, size_t line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}
  const char *kind() const override { return "parse"; }
  size_t line() const { return line_; }

 private:
  size_t line_;
};

// Well-formed records that violate a data invariant (contiguity, overlap,
// out-of-range indices, length mismatches).
class IntegrityError : public Error {
 public:
  using Error::Error;
  const char *kind() const override { return "integrity"; }
};

// Non-finite loss or parameters during training or inference.
class NumericalError : public Error {
 public:
  using Error::Error;
  const char *kind() const override { return "numerical"; }
};

// Invalid configuration or argument combination.
class UsageError : public Error {
 public:
  using Error::Error;
  const char *kind() const override { return "usage"; }
};

}  // namespace initdet

#endif  // INITDET_ERROR_H_
