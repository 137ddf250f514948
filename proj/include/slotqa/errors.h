// Copyright 2026 The SlotQA Authors.
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

#ifndef SLOTQA_ERRORS_H_
#define SLOTQA_ERRORS_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace slotqa {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input. `locus` names where: "file:line", a field path such as
// "elements[2].category", or both.
class ParseError : public Error {
 public:
  ParseError(std::string locus, const std::string& message)
      : Error(locus.empty() ? message : locus + ": " + message),
        locus_(std::move(locus)) {}
  const std::string& locus() const { return locus_; }

 private:
  std::string locus_;
};

// Well-formed input that breaks one or more invariants. All violations are
// collected before throwing.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class EmptyLabelError : public Error {
 public:
  explicit EmptyLabelError(std::string element_id)
      : Error("element '" + element_id +
              "' has an empty label after command stripping"),
        element_id_(std::move(element_id)) {}
  const std::string& element_id() const { return element_id_; }

 private:
  std::string element_id_;
};

// Dangling I-x tag in strict BIO mode.
class TagSequenceError : public Error {
 public:
  TagSequenceError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

// A backend returned an answer that is not the context substring it claims.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class SpanOutOfRange : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class InsufficientScreens : public Error {
 public:
  using Error::Error;
};

class EmptyPlan : public Error {
 public:
  EmptyPlan() : Error("training plan needs at least one stage") {}
};

class InvalidPlan : public Error {
 public:
  using Error::Error;
};

}  // namespace slotqa

#endif  // SLOTQA_ERRORS_H_
