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

#ifndef COHORT_PARTITIONER_H_
#define COHORT_PARTITIONER_H_

// Cohort partitioning: split the students into K groups, give each group its
// greedy-optimal schedule, and maximize total benefit.
//
// cohpart() alternates two steps, k-means style, starting from a uniform
// random assignment:
//   assignment  every student joins the group whose current schedule
//               (center) gives that student the most benefit;
//   update      every group's center is recomputed with schedule_group().
// Neither step can lower the total benefit, so the objective trace is
// non-decreasing and the loop stops once no student moves.
//
// The baselines (random assignment, Lloyd's k-means on raw requirement rows)
// are scored the same way: schedule_group() per group, then sum.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cohort/model.h"
#include "cohort/rng.h"

namespace cohort {

struct PartitionConfig {
  std::size_t k = 1;
  int d = 0;
  std::uint64_t seed = 0;
  int max_iters = 100;
  // cohpart_sampled clusters k * sample_multiplier students.
  std::size_t sample_multiplier = 4;
  // Independent seeded runs; the best objective is kept. Random assignment
  // ignores this.
  int restarts = 1;
};

struct PartitionResult {
  Partition partition;
  // Objective after initialization and after every update step.
  std::vector<double> objective_trace;
  int iterations = 0;
  bool converged = false;
  double runtime_ms = 0.0;
  // Wall-clock of each assignment + update pass of the reported run.
  std::vector<double> iteration_ms;
};

// Throws InvalidArgument if k == 0, k > n_students, d < 0, max_iters < 1 or
// restarts < 1.
void validate_config(const RequirementMatrix& matrix,
                     const PartitionConfig& cfg);

PartitionResult cohpart(const RequirementMatrix& matrix,
                        const PartitionConfig& cfg,
                        BenefitFunction bf = BenefitFunction::kUniform);

// cohpart() on a uniform sample of k * sample_multiplier students; everyone
// else then joins the group whose final center benefits them most, and the
// centers are recomputed once over the full membership. Falls back to
// cohpart() when the sample would cover the whole population.
PartitionResult cohpart_sampled(const RequirementMatrix& matrix,
                                const PartitionConfig& cfg,
                                BenefitFunction bf = BenefitFunction::kUniform);

// Each student joins one of the k groups independently and uniformly; empty
// groups are allowed and score zero.
PartitionResult random_partition(const RequirementMatrix& matrix,
                                 const PartitionConfig& cfg,
                                 BenefitFunction bf = BenefitFunction::kUniform);

// Uniform random labels in [0, k) drawn from `rng`.
std::vector<GroupIndex> random_assignment(std::size_t n, std::size_t k,
                                          Rng& rng);

// Lloyd's algorithm on the raw requirement rows (Euclidean distance, mean
// update, seeded random-row initial centers). An empty cluster is re-seeded
// at the point farthest from its own center. With restarts > 1 the run with
// the lowest within-cluster sum of squares is kept. The resulting groups are
// then scored like any other partition.
PartitionResult kmeans_partition(const RequirementMatrix& matrix,
                                 const PartitionConfig& cfg,
                                 BenefitFunction bf = BenefitFunction::kUniform);

// Scores an arbitrary assignment: schedule_group() per non-empty group and
// the summed benefit. Throws InvalidArgument for a wrong-length assignment or
// a group index >= k.
Partition evaluate_partition(const RequirementMatrix& matrix,
                             std::span<const GroupIndex> assignment,
                             std::size_t k, int d,
                             BenefitFunction bf = BenefitFunction::kUniform);

// Adjusted Rand index between two labelings of the same students. Returns 1
// for identical partitions up to relabeling and about 0 for independent ones.
double partition_similarity(std::span<const GroupIndex> a,
                            std::span<const GroupIndex> b);

}  // namespace cohort

#endif  // COHORT_PARTITIONER_H_
