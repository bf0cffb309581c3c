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

#ifndef COHORT_IO_H_
#define COHORT_IO_H_

// Plain CSV formats.
//
//   requirements   student_id,<topic_1>,...,<topic_m>   integer cells >= 1
//   labels         student_id,planted_group
//   partition      student_id,group
//   constraints    target_topic,prereq_topic,min_reps   (header optional)
//   difficulties   course_id,difficulty
//
// Fields are comma-separated without quoting. Parse failures throw
// InvalidArgument with the offending line number.

#include <iosfwd>
#include <string>
#include <vector>

#include "cohort/model.h"
#include "cohort/scheduler.h"

namespace cohort {

RequirementMatrix read_matrix_csv(std::istream& in);
RequirementMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(std::ostream& out, const RequirementMatrix& matrix);
void write_matrix_csv(const std::string& path, const RequirementMatrix& matrix);

// `header` is the second column name ("planted_group" or "group").
void write_assignment_csv(std::ostream& out, const RequirementMatrix& matrix,
                          const std::vector<GroupIndex>& assignment,
                          const std::string& header);
void write_assignment_csv(const std::string& path,
                          const RequirementMatrix& matrix,
                          const std::vector<GroupIndex>& assignment,
                          const std::string& header);
// Labels in matrix row order; every student must appear exactly once.
std::vector<GroupIndex> read_assignment_csv(std::istream& in,
                                            const RequirementMatrix& matrix);
std::vector<GroupIndex> read_assignment_csv(const std::string& path,
                                            const RequirementMatrix& matrix);

// Rows sharing a target are merged into one constraint. Topic names resolve
// against the matrix header.
std::vector<PrecedenceConstraint> read_constraints_csv(
    std::istream& in, const RequirementMatrix& matrix);
std::vector<PrecedenceConstraint> read_constraints_csv(
    const std::string& path, const RequirementMatrix& matrix);

// Second column of a two-column `id,value` CSV with a header row.
std::vector<double> read_value_column_csv(std::istream& in);
std::vector<double> read_value_column_csv(const std::string& path);

// Splits one CSV line on commas, trimming spaces and a trailing '\r'.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace cohort

#endif  // COHORT_IO_H_
