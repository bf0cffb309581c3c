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

#include "cohort/model.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cohort/errors.h"

namespace cohort {
namespace {

std::vector<std::string> default_ids(char prefix, std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

void check_student(const RequirementMatrix& matrix, StudentIndex s) {
  if (s >= matrix.n_students()) {
    throw InvalidArgument("student index " + std::to_string(s) +
                          " out of range");
  }
}

void check_dimensions(const RequirementMatrix& matrix,
                      const RepetitionVector& rv) {
  if (rv.n_topics() != matrix.n_topics()) {
    throw InvalidArgument("repetition vector covers " +
                          std::to_string(rv.n_topics()) + " topics, matrix has " +
                          std::to_string(matrix.n_topics()));
  }
}

}  // namespace

RequirementMatrix::RequirementMatrix(std::size_t n_students,
                                     std::size_t n_topics,
                                     std::vector<int> req,
                                     std::vector<std::string> student_ids,
                                     std::vector<std::string> topic_ids)
    : n_students_(n_students),
      n_topics_(n_topics),
      req_(std::move(req)),
      student_ids_(std::move(student_ids)),
      topic_ids_(std::move(topic_ids)) {
  if (req_.size() != n_students_ * n_topics_) {
    throw InvalidArgument("requirement matrix has " +
                          std::to_string(req_.size()) + " cells, expected " +
                          std::to_string(n_students_ * n_topics_));
  }
  for (int& r : req_) {
    if (r < 1) throw InvalidArgument("requirements must be >= 1");
    r = std::min(r, kMaxRequirement);
  }
  if (student_ids_.empty()) student_ids_ = default_ids('s', n_students_);
  if (topic_ids_.empty()) topic_ids_ = default_ids('t', n_topics_);
  if (student_ids_.size() != n_students_ || topic_ids_.size() != n_topics_) {
    throw InvalidArgument("id list length does not match matrix shape");
  }
}

RequirementMatrix RequirementMatrix::from_rows(
    const std::vector<std::vector<int>>& rows,
    std::vector<std::string> student_ids, std::vector<std::string> topic_ids) {
  const std::size_t m = rows.empty() ? topic_ids.size() : rows.front().size();
  std::vector<int> cells;
  cells.reserve(rows.size() * m);
  for (const auto& row : rows) {
    if (row.size() != m) throw InvalidArgument("ragged requirement rows");
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return RequirementMatrix(rows.size(), m, std::move(cells),
                           std::move(student_ids), std::move(topic_ids));
}

std::int64_t RequirementMatrix::row_sum(StudentIndex s) const {
  std::int64_t sum = 0;
  for (int r : row(s)) sum += r;
  return sum;
}

TopicIndex RequirementMatrix::topic_index(std::string_view id) const {
  auto it = std::find(topic_ids_.begin(), topic_ids_.end(), id);
  if (it == topic_ids_.end()) {
    throw InvalidArgument("unknown topic '" + std::string(id) + "'");
  }
  return static_cast<TopicIndex>(it - topic_ids_.begin());
}

StudentIndex RequirementMatrix::student_index(std::string_view id) const {
  auto it = std::find(student_ids_.begin(), student_ids_.end(), id);
  if (it == student_ids_.end()) {
    throw InvalidArgument("unknown student '" + std::string(id) + "'");
  }
  return static_cast<StudentIndex>(it - student_ids_.begin());
}

RequirementMatrix RequirementMatrix::select_rows(
    std::span<const StudentIndex> rows) const {
  std::vector<int> cells;
  std::vector<std::string> ids;
  cells.reserve(rows.size() * n_topics_);
  ids.reserve(rows.size());
  for (StudentIndex s : rows) {
    if (s >= n_students_) throw InvalidArgument("row index out of range");
    auto r = row(s);
    cells.insert(cells.end(), r.begin(), r.end());
    ids.push_back(student_ids_[s]);
  }
  return RequirementMatrix(rows.size(), n_topics_, std::move(cells),
                           std::move(ids), topic_ids_);
}

Schedule::Schedule(std::vector<Occurrence> slots) : slots_(std::move(slots)) {
  std::vector<int> seen;
  for (const Occurrence& o : slots_) {
    if (o.topic >= seen.size()) seen.resize(o.topic + 1, 0);
    if (o.index != seen[o.topic] + 1) {
      throw InvalidArgument("occurrence <" + std::to_string(o.topic) + "," +
                            std::to_string(o.index) + "> out of sequence");
    }
    ++seen[o.topic];
  }
}

Schedule Schedule::from_topics(std::span<const TopicIndex> topics) {
  std::vector<int> seen;
  std::vector<Occurrence> slots;
  slots.reserve(topics.size());
  for (TopicIndex t : topics) {
    if (t >= seen.size()) seen.resize(t + 1, 0);
    slots.push_back({t, ++seen[t]});
  }
  Schedule s;
  s.slots_ = std::move(slots);
  return s;
}

RepetitionVector::RepetitionVector(std::vector<int> reps)
    : reps_(std::move(reps)) {
  for (int r : reps_) {
    if (r < 0) throw InvalidArgument("repetition counts must be >= 0");
  }
}

std::int64_t RepetitionVector::total() const {
  std::int64_t sum = 0;
  for (int r : reps_) sum += r;
  return sum;
}

BenefitFunction parse_benefit_function(std::string_view name) {
  if (name == "uniform") return BenefitFunction::kUniform;
  if (name == "geometric") return BenefitFunction::kGeometric;
  throw InvalidArgument("unknown benefit function '" + std::string(name) + "'");
}

std::string_view to_string(BenefitFunction bf) {
  switch (bf) {
    case BenefitFunction::kUniform:
      return "uniform";
    case BenefitFunction::kGeometric:
      return "geometric";
  }
  return "unknown";
}

std::vector<std::vector<StudentIndex>> Partition::groups() const {
  std::vector<std::vector<StudentIndex>> out(k);
  for (StudentIndex s = 0; s < assignment.size(); ++s) {
    out[assignment[s]].push_back(s);
  }
  return out;
}

double occurrence_benefit(BenefitFunction bf, int req, int occurrence) {
  if (req < 1 || occurrence < 1) {
    throw InvalidArgument("occurrence_benefit needs req >= 1 and i >= 1");
  }
  if (occurrence > req) return 0.0;
  switch (bf) {
    case BenefitFunction::kUniform:
      return 1.0 / req;
    case BenefitFunction::kGeometric:
      return std::ldexp(1.0, -occurrence);
  }
  return 0.0;
}

double student_benefit(const RequirementMatrix& matrix, StudentIndex s,
                       const RepetitionVector& rv, BenefitFunction bf) {
  check_student(matrix, s);
  check_dimensions(matrix, rv);
  auto reqs = matrix.row(s);
  double b = 0.0;
  switch (bf) {
    case BenefitFunction::kUniform:
      for (TopicIndex t = 0; t < reqs.size(); ++t) {
        if (rv[t] >= reqs[t]) {
          b += 1.0;
        } else if (rv[t] > 0) {
          b += static_cast<double>(rv[t]) / reqs[t];
        }
      }
      break;
    case BenefitFunction::kGeometric:
      // Sum of 2^-i for i = 1..min(req, rv).
      for (TopicIndex t = 0; t < reqs.size(); ++t) {
        b += 1.0 - std::ldexp(1.0, -std::min(reqs[t], rv[t]));
      }
      break;
  }
  return b;
}

double group_benefit(const RequirementMatrix& matrix,
                     std::span<const StudentIndex> group,
                     const RepetitionVector& rv, BenefitFunction bf) {
  if (group.empty()) throw InvalidArgument("group_benefit of an empty group");
  double b = 0.0;
  for (StudentIndex s : group) b += student_benefit(matrix, s, rv, bf);
  return b;
}

double marginal_benefit(const RequirementMatrix& matrix,
                        std::span<const StudentIndex> group, TopicIndex t,
                        int occurrence, BenefitFunction bf) {
  if (group.empty()) {
    throw InvalidArgument("marginal_benefit of an empty group");
  }
  if (t >= matrix.n_topics()) throw InvalidArgument("topic out of range");
  double m = 0.0;
  for (StudentIndex s : group) {
    check_student(matrix, s);
    m += occurrence_benefit(bf, matrix.req(s, t), occurrence);
  }
  return m;
}

double partition_benefit(const RequirementMatrix& matrix, Partition& p,
                         BenefitFunction bf) {
  if (p.assignment.size() != matrix.n_students()) {
    throw InvalidArgument("partition covers " +
                          std::to_string(p.assignment.size()) +
                          " students, matrix has " +
                          std::to_string(matrix.n_students()));
  }
  if (p.group_schedules.size() != p.k) {
    throw InvalidArgument("partition needs one schedule per group");
  }
  for (const RepetitionVector& rv : p.group_schedules) {
    check_dimensions(matrix, rv);
  }
  double total = 0.0;
  for (StudentIndex s = 0; s < p.assignment.size(); ++s) {
    if (p.assignment[s] >= p.k) {
      throw InvalidArgument("group index out of range");
    }
    total += student_benefit(matrix, s, p.group_schedules[p.assignment[s]], bf);
  }
  p.objective = total;
  return total;
}

RepetitionVector repetition_vector_of(const Schedule& schedule,
                                      std::size_t n_topics) {
  RepetitionVector rv(n_topics);
  for (const Occurrence& o : schedule.slots()) {
    if (o.topic >= n_topics) throw InvalidArgument("topic out of range");
    rv.increment(o.topic);
  }
  return rv;
}

}  // namespace cohort
