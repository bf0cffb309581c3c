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

#include "cohort/scheduler.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <utility>

#include "cohort/errors.h"

namespace cohort {
namespace {

// Marginal benefits of successive occurrences of one topic for a fixed group.
class OccurrenceStream {
 public:
  OccurrenceStream(std::vector<int> reqs, BenefitFunction bf)
      : reqs_(std::move(reqs)), bf_(bf) {
    std::sort(reqs_.begin(), reqs_.end());
    if (bf_ == BenefitFunction::kUniform) {
      suffix_.assign(reqs_.size() + 1, 0.0);
      for (std::size_t j = reqs_.size(); j-- > 0;) {
        suffix_[j] = suffix_[j + 1] + 1.0 / reqs_[j];
      }
    }
  }

  // Marginal benefit of the next occurrence.
  double peek() const {
    if (bf_ == BenefitFunction::kUniform) return suffix_[first_active_];
    const auto active = static_cast<double>(reqs_.size() - first_active_);
    return active == 0.0 ? 0.0 : std::ldexp(active, -(placed_ + 1));
  }

  int next_occurrence() const { return placed_ + 1; }

  void advance() {
    ++placed_;
    // Students with req <= placed no longer gain from this topic.
    while (first_active_ < reqs_.size() && reqs_[first_active_] <= placed_) {
      ++first_active_;
    }
  }

 private:
  std::vector<int> reqs_;
  std::vector<double> suffix_;
  BenefitFunction bf_;
  std::size_t first_active_ = 0;
  int placed_ = 0;
};

struct HeapEntry {
  double benefit;
  TopicIndex topic;
};

// Max-heap order: larger benefit first, then lower topic index.
struct HeapLess {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.benefit != b.benefit) return a.benefit < b.benefit;
    return a.topic > b.topic;
  }
};

using TopicHeap =
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapLess>;

void check_group(const RequirementMatrix& matrix,
                 std::span<const StudentIndex> group, int d) {
  if (group.empty()) throw InvalidArgument("cannot schedule an empty group");
  if (d < 0) throw InvalidArgument("deadline must be >= 0");
  for (StudentIndex s : group) {
    if (s >= matrix.n_students()) {
      throw InvalidArgument("student index " + std::to_string(s) +
                            " out of range");
    }
  }
}

std::vector<OccurrenceStream> build_streams(
    const RequirementMatrix& matrix, std::span<const StudentIndex> group,
    BenefitFunction bf) {
  std::vector<OccurrenceStream> streams;
  streams.reserve(matrix.n_topics());
  std::vector<int> reqs(group.size());
  for (TopicIndex t = 0; t < matrix.n_topics(); ++t) {
    for (std::size_t j = 0; j < group.size(); ++j) {
      reqs[j] = matrix.req(group[j], t);
    }
    streams.emplace_back(reqs, bf);
  }
  return streams;
}

GroupSchedule finish(const RequirementMatrix& matrix,
                     std::span<const StudentIndex> group, BenefitFunction bf,
                     std::vector<TraceStep> trace) {
  std::vector<TopicIndex> topics;
  topics.reserve(trace.size());
  for (const TraceStep& step : trace) topics.push_back(step.topic);
  GroupSchedule out;
  out.schedule = Schedule::from_topics(topics);
  out.repetitions = repetition_vector_of(out.schedule, matrix.n_topics());
  out.benefit = group_benefit(matrix, group, out.repetitions, bf);
  out.trace = std::move(trace);
  return out;
}

}  // namespace

GroupSchedule schedule_group(const RequirementMatrix& matrix,
                             std::span<const StudentIndex> group, int d,
                             BenefitFunction bf, TieBreakPolicy /*tb*/) {
  check_group(matrix, group, d);
  std::vector<TraceStep> trace;
  trace.reserve(static_cast<std::size_t>(d));
  if (matrix.n_topics() == 0) {
    if (d > 0) throw InvalidArgument("no topics to schedule");
    return finish(matrix, group, bf, std::move(trace));
  }

  auto streams = build_streams(matrix, group, bf);
  TopicHeap heap;
  for (TopicIndex t = 0; t < streams.size(); ++t) {
    heap.push({streams[t].peek(), t});
  }
  for (int slot = 0; slot < d; ++slot) {
    const HeapEntry best = heap.top();
    heap.pop();
    OccurrenceStream& stream = streams[best.topic];
    trace.push_back({best.topic, stream.next_occurrence(), best.benefit});
    stream.advance();
    heap.push({stream.peek(), best.topic});
  }
  return finish(matrix, group, bf, std::move(trace));
}

void validate_constraints(std::span<const PrecedenceConstraint> constraints,
                          std::size_t n_topics) {
  std::vector<std::vector<TopicIndex>> successors(n_topics);
  std::vector<int> indegree(n_topics, 0);
  for (const PrecedenceConstraint& c : constraints) {
    if (c.target >= n_topics) {
      throw InvalidConstraints("constraint target out of range");
    }
    for (const Prerequisite& p : c.prerequisites) {
      if (p.topic >= n_topics) {
        throw InvalidConstraints("prerequisite topic out of range");
      }
      if (p.topic == c.target) {
        throw InvalidConstraints("topic " + std::to_string(c.target) +
                                 " is its own prerequisite");
      }
      if (p.min_reps < 1) {
        throw InvalidConstraints("prerequisite min_reps must be >= 1");
      }
      successors[p.topic].push_back(c.target);
      ++indegree[c.target];
    }
  }
  // Kahn's algorithm; anything left unvisited sits on a cycle.
  std::vector<TopicIndex> ready;
  for (TopicIndex t = 0; t < n_topics; ++t) {
    if (indegree[t] == 0) ready.push_back(t);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    TopicIndex t = ready.back();
    ready.pop_back();
    ++visited;
    for (TopicIndex next : successors[t]) {
      if (--indegree[next] == 0) ready.push_back(next);
    }
  }
  if (visited != n_topics) {
    throw InvalidConstraints("precedence constraints contain a cycle");
  }
}

GroupSchedule schedule_group_constrained(
    const RequirementMatrix& matrix, std::span<const StudentIndex> group,
    int d, BenefitFunction bf, TieBreakPolicy tb,
    std::span<const PrecedenceConstraint> constraints) {
  check_group(matrix, group, d);
  validate_constraints(constraints, matrix.n_topics());
  if (constraints.empty()) return schedule_group(matrix, group, d, bf, tb);

  const std::size_t n_topics = matrix.n_topics();
  std::vector<std::vector<Prerequisite>> prereqs_of(n_topics);
  // dependents[i] lists targets that have topic i as a prerequisite.
  std::vector<std::vector<TopicIndex>> dependents(n_topics);
  for (const PrecedenceConstraint& c : constraints) {
    for (const Prerequisite& p : c.prerequisites) {
      prereqs_of[c.target].push_back(p);
      dependents[p.topic].push_back(c.target);
    }
  }
  std::vector<int> placed(n_topics, 0);
  auto is_unlocked = [&](TopicIndex t) {
    return std::all_of(prereqs_of[t].begin(), prereqs_of[t].end(),
                       [&](const Prerequisite& p) {
                         return placed[p.topic] >= p.min_reps;
                       });
  };
  std::vector<bool> unlocked(n_topics);
  for (TopicIndex t = 0; t < n_topics; ++t) unlocked[t] = is_unlocked(t);

  auto streams = build_streams(matrix, group, bf);
  TopicHeap heap;
  for (TopicIndex t = 0; t < n_topics; ++t) {
    heap.push({streams[t].peek(), t});
  }
  std::vector<TraceStep> trace;
  trace.reserve(static_cast<std::size_t>(d));
  std::vector<HeapEntry> blocked;
  for (int slot = 0; slot < d; ++slot) {
    while (!heap.empty() && !unlocked[heap.top().topic]) {
      blocked.push_back(heap.top());
      heap.pop();
    }
    if (heap.empty()) {
      throw InfeasibleConstraints("no eligible topic for slot " +
                                  std::to_string(slot + 1));
    }
    const HeapEntry best = heap.top();
    heap.pop();
    for (const HeapEntry& e : blocked) heap.push(e);
    blocked.clear();

    OccurrenceStream& stream = streams[best.topic];
    trace.push_back({best.topic, stream.next_occurrence(), best.benefit});
    stream.advance();
    heap.push({stream.peek(), best.topic});
    ++placed[best.topic];
    for (TopicIndex target : dependents[best.topic]) {
      if (!unlocked[target]) unlocked[target] = is_unlocked(target);
    }
  }
  return finish(matrix, group, bf, std::move(trace));
}

}  // namespace cohort
