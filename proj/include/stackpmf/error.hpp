// Copyright 2026 The stackpmf Authors. All Rights Reserved.
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
// =============================================================================
#ifndef STACKPMF_ERROR_HPP_
#define STACKPMF_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stackpmf {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model or estimator parameter lies outside its admissible domain.
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

// An operation received an empty vector or a zero-size sample.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Leave-one-out quantities need at least two observations.
class InsufficientSampleError : public Error {
 public:
  using Error::Error;
};

// A probability vector has negative entries or does not sum to one.
class InvalidPmfError : public Error {
 public:
  using Error::Error;
};

// Malformed input data. line() is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace stackpmf

#endif  // STACKPMF_ERROR_HPP_
