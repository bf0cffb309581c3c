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

#include "cohort/oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "cohort/errors.h"

namespace cohort {
namespace {

// Group benefit straight from the per-occurrence definition.
double direct_group_benefit(const RequirementMatrix& matrix,
                            std::span<const StudentIndex> group,
                            const std::vector<int>& reps, BenefitFunction bf) {
  double total = 0.0;
  for (StudentIndex s : group) {
    for (TopicIndex t = 0; t < reps.size(); ++t) {
      for (int i = 1; i <= reps[t]; ++i) {
        total += occurrence_benefit(bf, matrix.req(s, t), i);
      }
    }
  }
  return total;
}

OracleSchedule enumerate_schedules(const RequirementMatrix& matrix,
                                   std::span<const StudentIndex> group, int d,
                                   BenefitFunction bf) {
  const std::size_t m = matrix.n_topics();
  OracleSchedule best;
  best.benefit = -1.0;
  if (m == 0) {
    if (d > 0) throw InvalidArgument("no topics to schedule");
    return {0.0, RepetitionVector(0)};
  }
  std::vector<int> reps(m, 0);
  // Visits every composition of d into m non-negative parts in lexicographic
  // order.
  auto visit = [&](auto&& self, std::size_t t, int left) -> void {
    if (t + 1 == m) {
      reps[t] = left;
      const double b = direct_group_benefit(matrix, group, reps, bf);
      if (b > best.benefit + kBenefitTolerance) {
        best.benefit = b;
        best.repetitions = RepetitionVector(reps);
      }
      return;
    }
    for (int c = 0; c <= left; ++c) {
      reps[t] = c;
      self(self, t + 1, left - c);
    }
  };
  visit(visit, 0, d);
  return best;
}

void check_common(const RequirementMatrix& matrix, int d,
                  const OracleLimits& limits) {
  if (d < 0) throw InvalidArgument("deadline must be >= 0");
  if (matrix.n_topics() > limits.max_topics) {
    throw LimitExceeded("oracle limited to " +
                        std::to_string(limits.max_topics) + " topics");
  }
  if (d > limits.max_d) {
    throw LimitExceeded("oracle limited to d <= " +
                        std::to_string(limits.max_d));
  }
}

}  // namespace

OracleSchedule brute_force_schedule(const RequirementMatrix& matrix,
                                    std::span<const StudentIndex> group, int d,
                                    BenefitFunction bf,
                                    const OracleLimits& limits) {
  check_common(matrix, d, limits);
  if (group.size() > limits.max_students) {
    throw LimitExceeded("oracle limited to groups of " +
                        std::to_string(limits.max_students));
  }
  if (group.empty()) throw InvalidArgument("cannot schedule an empty group");
  for (StudentIndex s : group) {
    if (s >= matrix.n_students()) {
      throw InvalidArgument("student index out of range");
    }
  }
  return enumerate_schedules(matrix, group, d, bf);
}

OraclePartition brute_force_partition(const RequirementMatrix& matrix,
                                      std::size_t k, int d, BenefitFunction bf,
                                      const OracleLimits& limits) {
  check_common(matrix, d, limits);
  const std::size_t n = matrix.n_students();
  if (n > limits.max_partition_students) {
    throw LimitExceeded("partition oracle limited to " +
                        std::to_string(limits.max_partition_students) +
                        " students");
  }
  if (k == 0) throw InvalidArgument("K must be >= 1");
  if (n == 0) return {0.0, {}};

  // Optimal benefit of every subset of students, keyed by bitmask.
  std::vector<double> subset_best(std::size_t{1} << n, std::nan(""));
  auto score = [&](std::uint32_t mask) {
    double& cached = subset_best[mask];
    if (std::isnan(cached)) {
      std::vector<StudentIndex> members;
      for (StudentIndex s = 0; s < n; ++s) {
        if (mask & (1u << s)) members.push_back(s);
      }
      cached = enumerate_schedules(matrix, members, d, bf).benefit;
    }
    return cached;
  };

  OraclePartition best;
  best.objective = -1.0;
  std::vector<GroupIndex> labels(n, 0);
  std::vector<std::uint32_t> masks(k, 0);
  // Restricted-growth strings: student i joins an existing group or opens
  // group max + 1, so each unlabeled partition is visited once.
  auto visit = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      double total = 0.0;
      for (std::size_t g = 0; g < used; ++g) total += score(masks[g]);
      if (total > best.objective + kBenefitTolerance) {
        best.objective = total;
        best.assignment = labels;
      }
      return;
    }
    const std::size_t limit = std::min(used + 1, k);
    for (std::size_t g = 0; g < limit; ++g) {
      labels[i] = g;
      masks[g] |= (1u << i);
      self(self, i + 1, std::max(used, g + 1));
      masks[g] &= ~(1u << i);
    }
  };
  visit(visit, 0, 0);
  return best;
}

}  // namespace cohort
