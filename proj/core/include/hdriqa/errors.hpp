// Copyright 2026 The hdriqa Authors
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

#ifndef HDRIQA_ERRORS_HPP_
#define HDRIQA_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hdriqa {

// Error taxonomy, mapped 1:1 onto CLI exit codes (see tools/):
//   ArgumentError  -> 2   bad parameters, dimension mismatches, degenerate input
//   FormatError    -> 3   malformed or unsupported file content
//   IoError        -> 3   unreadable/unwritable files
//   NumericalError -> 4   undefined or non-finite results
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Input is structurally valid but carries no usable signal (e.g. an
// all-zero radiance map).
class DegenerateInputError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Reserved metric identifiers (lpips, dists) that this build does not ship.
class UnsupportedMetricError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Correlation of a constant vector, or too few samples.
class UndefinedCorrelationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Logistic fit failed to converge from every start; keeps the best residual
// seen so callers can report it.
class FitFailureError : public NumericalError {
 public:
  FitFailureError(const std::string& what, double best_residual)
      : NumericalError(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace hdriqa

#endif  // HDRIQA_ERRORS_HPP_
