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

#ifndef COHORT_SCHEDULER_H_
#define COHORT_SCHEDULER_H_

#include <span>
#include <vector>

#include "cohort/model.h"

namespace cohort {

// Order among topics whose next occurrence has the same marginal benefit.
enum class TieBreakPolicy {
  kLowestTopicIndex,
};

struct Prerequisite {
  TopicIndex topic = 0;
  int min_reps = 1;

  friend bool operator==(const Prerequisite&, const Prerequisite&) = default;
};

// `target` may first appear only once every prerequisite topic has been
// scheduled at least `min_reps` times in earlier slots.
struct PrecedenceConstraint {
  TopicIndex target = 0;
  std::vector<Prerequisite> prerequisites;

  friend bool operator==(const PrecedenceConstraint&,
                         const PrecedenceConstraint&) = default;
};

// One greedy step: the occurrence placed into the next slot and the marginal
// benefit it contributed.
struct TraceStep {
  TopicIndex topic = 0;
  int occurrence = 1;
  double marginal_benefit = 0.0;
};

struct GroupSchedule {
  Schedule schedule;
  RepetitionVector repetitions;
  double benefit = 0.0;
  std::vector<TraceStep> trace;
};

// Fills `d` slots greedily, always placing the topic whose next occurrence
// has the largest marginal benefit for `group`. Each topic's marginal benefit
// depends only on how often that topic was already placed and never increases,
// so the greedy schedule maximizes group benefit.
//
// Runs in O(|group| |T| log |group| + d log |T|): per-topic requirement lists
// are sorted once, after which every next-occurrence marginal benefit is a
// suffix-sum lookup and topics sit in a max-heap.
//
// Throws InvalidArgument on an empty group, an out-of-range student, or d < 0.
GroupSchedule schedule_group(
    const RequirementMatrix& matrix, std::span<const StudentIndex> group,
    int d, BenefitFunction bf = BenefitFunction::kUniform,
    TieBreakPolicy tb = TieBreakPolicy::kLowestTopicIndex);

// Greedy schedule that only considers topics whose precedence constraints
// hold at the current slot. Constraints sharing a target must all hold. No
// optimality claim is made for this variant.
//
// Throws InvalidConstraints for an invalid or cyclic constraint set, and
// InfeasibleConstraints when a slot remains but no topic is eligible.
GroupSchedule schedule_group_constrained(
    const RequirementMatrix& matrix, std::span<const StudentIndex> group,
    int d, BenefitFunction bf, TieBreakPolicy tb,
    std::span<const PrecedenceConstraint> constraints);

// Checks topic ranges, min_reps >= 1, that no target is its own
// prerequisite, and that the prerequisite graph is acyclic.
void validate_constraints(std::span<const PrecedenceConstraint> constraints,
                          std::size_t n_topics);

}  // namespace cohort

#endif  // COHORT_SCHEDULER_H_
