// Copyright 2026 The Cohort Authors
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

#ifndef COHORT_ERRORS_H_
#define COHORT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cohort {

// Bad argument or malformed input (dimension mismatch, zero requirement,
// unknown grade symbol, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Precedence constraint set that references unknown topics, lists the target
// among its own prerequisites, or contains a cycle.
class InvalidConstraints : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// A constrained schedule cannot place a topic into a remaining slot.
class InfeasibleConstraints : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generator configuration that fails validation (missing or unsorted GRM
// thresholds, unknown family, bad parameter).
class InvalidConfig : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Exhaustive solver request outside its configured size caps.
class LimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace cohort

#endif  // COHORT_ERRORS_H_
