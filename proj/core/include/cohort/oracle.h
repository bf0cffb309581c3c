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

#ifndef COHORT_ORACLE_H_
#define COHORT_ORACLE_H_

// Exhaustive solvers for desk-scale instances. They share nothing with the
// greedy scheduler or the partition heuristics beyond the benefit functions,
// and serve as the reference those are checked against.

#include <cstddef>
#include <span>
#include <vector>

#include "cohort/model.h"

namespace cohort {

// Hard caps; requests beyond them throw LimitExceeded.
struct OracleLimits {
  std::size_t max_students = 6;
  std::size_t max_topics = 6;
  int max_d = 8;
  std::size_t max_partition_students = 10;
};

struct OracleSchedule {
  double benefit = 0.0;
  RepetitionVector repetitions;
};

struct OraclePartition {
  double objective = 0.0;
  std::vector<GroupIndex> assignment;
};

// Maximum group benefit over every multiset of d topics. Ties go to the
// lexicographically smallest repetition vector.
OracleSchedule brute_force_schedule(const RequirementMatrix& matrix,
                                    std::span<const StudentIndex> group, int d,
                                    BenefitFunction bf = BenefitFunction::kUniform,
                                    const OracleLimits& limits = {});

// Maximum total benefit over every partition of the students into at most k
// groups, each scored with brute_force_schedule. Label permutations are
// skipped by enumerating restricted-growth strings; ties go to the
// lexicographically smallest assignment.
OraclePartition brute_force_partition(const RequirementMatrix& matrix,
                                      std::size_t k, int d,
                                      BenefitFunction bf = BenefitFunction::kUniform,
                                      const OracleLimits& limits = {});

}  // namespace cohort

#endif  // COHORT_ORACLE_H_
