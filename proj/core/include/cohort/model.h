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

#ifndef COHORT_MODEL_H_
#define COHORT_MODEL_H_

// Domain types and benefit computations shared by the scheduler, the
// partitioners and the exhaustive oracles.
//
// A student s needs req(s, t) repetitions of topic t for full mastery. Each of
// the first req(s, t) occurrences of t in a schedule is worth 1 / req(s, t) to
// s under the uniform benefit function; later occurrences are worth nothing.
// Because that value depends only on the occurrence index, every benefit below
// is a function of the per-topic occurrence counts (RepetitionVector), never
// of slot order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cohort {

using StudentIndex = std::size_t;
using TopicIndex = std::size_t;
using GroupIndex = std::size_t;

// Requirements above this are clamped on ingestion so sums of 1/req stay well
// inside double precision.
inline constexpr int kMaxRequirement = 1'000'000;

// Absolute tolerance for comparing benefit values.
inline constexpr double kBenefitTolerance = 1e-9;

class RequirementMatrix {
 public:
  RequirementMatrix() = default;

  // `req` is row-major, n_students x n_topics. Every cell must be >= 1;
  // cells above kMaxRequirement are clamped. Empty id lists get the default
  // labels "s1".."sn" and "t1".."tm".
  RequirementMatrix(std::size_t n_students, std::size_t n_topics,
                    std::vector<int> req,
                    std::vector<std::string> student_ids = {},
                    std::vector<std::string> topic_ids = {});

  static RequirementMatrix from_rows(
      const std::vector<std::vector<int>>& rows,
      std::vector<std::string> student_ids = {},
      std::vector<std::string> topic_ids = {});

  std::size_t n_students() const { return n_students_; }
  std::size_t n_topics() const { return n_topics_; }

  int req(StudentIndex s, TopicIndex t) const {
    return req_[s * n_topics_ + t];
  }
  std::span<const int> row(StudentIndex s) const {
    return {req_.data() + s * n_topics_, n_topics_};
  }
  std::span<const int> cells() const { return req_; }

  // Total repetitions student s needs to master every topic.
  std::int64_t row_sum(StudentIndex s) const;

  const std::vector<std::string>& student_ids() const { return student_ids_; }
  const std::vector<std::string>& topic_ids() const { return topic_ids_; }

  // Throws InvalidArgument when no topic has that id.
  TopicIndex topic_index(std::string_view id) const;
  StudentIndex student_index(std::string_view id) const;

  // Sub-matrix with the given rows, in the given order; ids are carried over.
  RequirementMatrix select_rows(std::span<const StudentIndex> rows) const;

  friend bool operator==(const RequirementMatrix&,
                         const RequirementMatrix&) = default;

 private:
  std::size_t n_students_ = 0;
  std::size_t n_topics_ = 0;
  std::vector<int> req_;
  std::vector<std::string> student_ids_;
  std::vector<std::string> topic_ids_;
};

// The i-th occurrence (1-based) of a topic in a schedule.
struct Occurrence {
  TopicIndex topic = 0;
  int index = 1;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Ordered, collision-free assignment of topic occurrences to timeslots: one
// occurrence per slot, and each topic's occurrence indices run 1, 2, ... in
// slot order.
class Schedule {
 public:
  Schedule() = default;
  // Throws InvalidArgument if the occurrence numbering is inconsistent.
  explicit Schedule(std::vector<Occurrence> slots);
  // Numbers the occurrences of a plain topic sequence.
  static Schedule from_topics(std::span<const TopicIndex> topics);

  std::size_t size() const { return slots_.size(); }
  bool empty() const { return slots_.empty(); }
  const std::vector<Occurrence>& slots() const { return slots_; }
  const Occurrence& operator[](std::size_t slot) const { return slots_[slot]; }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::vector<Occurrence> slots_;
};

// Per-topic occurrence counts of a schedule.
class RepetitionVector {
 public:
  RepetitionVector() = default;
  explicit RepetitionVector(std::size_t n_topics) : reps_(n_topics, 0) {}
  // Throws InvalidArgument on a negative count.
  explicit RepetitionVector(std::vector<int> reps);

  std::size_t n_topics() const { return reps_.size(); }
  int operator[](TopicIndex t) const { return reps_[t]; }
  const std::vector<int>& reps() const { return reps_; }
  std::int64_t total() const;

  void increment(TopicIndex t) { ++reps_[t]; }

  friend bool operator==(const RepetitionVector&,
                         const RepetitionVector&) = default;
  friend auto operator<=>(const RepetitionVector&,
                          const RepetitionVector&) = default;

 private:
  std::vector<int> reps_;
};

enum class BenefitFunction {
  // 1/req for each of the first req occurrences.
  kUniform,
  // 1/2^i for the i-th occurrence while i <= req.
  kGeometric,
};

BenefitFunction parse_benefit_function(std::string_view name);
std::string_view to_string(BenefitFunction bf);

// Assignment of every student to one of K groups together with each group's
// schedule (as a repetition vector) and the total benefit.
struct Partition {
  std::size_t k = 0;
  std::vector<GroupIndex> assignment;
  std::vector<RepetitionVector> group_schedules;
  double objective = 0.0;

  // Members of each group in increasing student order.
  std::vector<std::vector<StudentIndex>> groups() const;
};

double occurrence_benefit(BenefitFunction bf, int req, int occurrence);

// Benefit student s draws from a schedule with repetition counts `rv`.
// Uniform: sum over t of min(req, rv[t]) / req.
double student_benefit(const RequirementMatrix& matrix, StudentIndex s,
                       const RepetitionVector& rv, BenefitFunction bf);

double group_benefit(const RequirementMatrix& matrix,
                     std::span<const StudentIndex> group,
                     const RepetitionVector& rv, BenefitFunction bf);

// Increase in group benefit from the `occurrence`-th repetition of topic t.
double marginal_benefit(const RequirementMatrix& matrix,
                        std::span<const StudentIndex> group, TopicIndex t,
                        int occurrence, BenefitFunction bf);

// Sum of group benefits under each group's stored schedule. Writes the value
// into p.objective and returns it. Empty groups contribute zero.
double partition_benefit(const RequirementMatrix& matrix, Partition& p,
                         BenefitFunction bf);

RepetitionVector repetition_vector_of(const Schedule& schedule,
                                      std::size_t n_topics);

}  // namespace cohort

#endif  // COHORT_MODEL_H_
