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

#ifndef COHORT_TOOLS_HARNESS_VERIFY_H_
#define COHORT_TOOLS_HARNESS_VERIFY_H_
// Randomized oracle equivalence checks behind `cohort verify`.
//
// Schedule suite: the greedy scheduler's benefit must equal the exhaustive
// optimum. Partition suite: the exhaustive partition must re-score to its
// reported objective, no heuristic may beat it, and with K = 1 CohPart must
// reach it. Instance i of either suite depends only on (seed, i).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cohort/model.h"
#include "cohort/oracle.h"

namespace cohort::tools {

struct VerifyOptions {
  std::size_t instances = 200;
  std::uint64_t seed = 0;
  // Run only this instance index, in both suites.
  std::optional<std::size_t> replay;
  // Instance shapes: group / population size, topics and deadline are drawn
  // up to these bounds, and requirements from [1, max_requirement].
  std::size_t max_group = 4;
  std::size_t max_topics = 5;
  int max_d = 6;
  int max_requirement = 4;
  std::size_t max_students = 6;
  std::size_t max_k = 3;
};

struct ScheduleInstance {
  RequirementMatrix matrix;
  int d = 0;
};

struct PartitionInstance {
  RequirementMatrix matrix;
  std::size_t k = 1;
  int d = 0;
};

ScheduleInstance schedule_instance(const VerifyOptions& options,
                                   std::size_t index);
PartitionInstance partition_instance(const VerifyOptions& options,
                                     std::size_t index);

struct VerifyFailure {
  std::string suite;
  std::size_t instance = 0;
  std::string detail;
};

struct VerifyReport {
  std::size_t schedule_checked = 0;
  std::size_t schedule_passed = 0;
  std::size_t partition_checked = 0;
  std::size_t partition_passed = 0;
  std::vector<VerifyFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Throws InvalidArgument when the shape bounds exceed the oracle limits.
VerifyReport run_verify(const VerifyOptions& options);

void print_report(std::ostream& out, const VerifyOptions& options,
                  const VerifyReport& report);

}  // namespace cohort::tools

#endif  // COHORT_TOOLS_HARNESS_VERIFY_H_
