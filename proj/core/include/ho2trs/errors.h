// Copyright 2026 The ho2trs Authors
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

#ifndef HO2TRS_ERRORS_H_
#define HO2TRS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ho2trs {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A 1-based source location.
struct SourceLoc {
  int line = 0;
  int column = 0;
  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

// Errors caused by bad user input. The CLI maps these to exit status 1.
class UserError : public Error {
 public:
  using Error::Error;
};

class ParseError : public UserError {
 public:
  ParseError(SourceLoc loc, const std::string& msg)
      : UserError(loc.str() + ": " + msg), loc_(loc) {}
  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

class TypeError : public UserError {
 public:
  TypeError(SourceLoc loc, const std::string& msg)
      : UserError(loc.str() + ": type error: " + msg), loc_(loc) {}
  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

class InvalidPosition : public Error {
 public:
  using Error::Error;
};

// Evaluation of a source program got stuck. Typed programs never do, so this
// points at a bug in the frontend.
class StuckTerm : public Error {
 public:
  using Error::Error;
};

// A pipeline stage cannot proceed on its input (exit status 2).
class PipelineInapplicable : public Error {
 public:
  using Error::Error;
};

class HeadVariablePresent : public PipelineInapplicable {
 public:
  using PipelineInapplicable::PipelineInapplicable;
};

class UncoveredHeadVariable : public PipelineInapplicable {
 public:
  using PipelineInapplicable::PipelineInapplicable;
};

// An internal invariant failed (exit status 3).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class AmbiguityIntroduced : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class SaturationDiverged : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class FormatConstraintViolated : public Error {
 public:
  using Error::Error;
};

// Raised when a fuel budget runs out. Subclasses may carry partial results.
class FuelExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace ho2trs

#endif  // HO2TRS_ERRORS_H_
