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

#include "cohort/io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "cohort/errors.h"

namespace cohort {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InvalidArgument("line " + std::to_string(line) + ": " + what);
}

long long parse_integer(const std::string& field, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(line, "'" + field + "' is not an integer");
  }
  return value;
}

double parse_double(const std::string& field, std::size_t line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &used);
  } catch (const std::exception&) {
    fail(line, "'" + field + "' is not a number");
  }
  if (used != field.size()) fail(line, "'" + field + "' is not a number");
  return value;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  return out;
}

bool blank(const std::string& line) { return trim(line).empty(); }

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

RequirementMatrix read_matrix_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) break;
  }
  if (blank(line)) throw InvalidArgument("requirement CSV is empty");
  auto header = split_csv_line(line);
  if (header.empty() || header.front() != "student_id") {
    fail(line_no, "header must start with student_id");
  }
  std::vector<std::string> topics(header.begin() + 1, header.end());
  std::vector<std::string> students;
  std::vector<int> cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      fail(line_no, "expected " + std::to_string(header.size()) +
                        " fields, got " + std::to_string(fields.size()));
    }
    students.push_back(fields.front());
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const long long v = parse_integer(fields[i], line_no);
      if (v < 1) fail(line_no, "requirements must be >= 1");
      cells.push_back(static_cast<int>(
          std::min<long long>(v, kMaxRequirement)));
    }
  }
  const std::size_t n = students.size();
  const std::size_t m = topics.size();
  return RequirementMatrix(n, m, std::move(cells), std::move(students),
                           std::move(topics));
}

RequirementMatrix read_matrix_csv(const std::string& path) {
  auto in = open_in(path);
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const RequirementMatrix& matrix) {
  out << "student_id";
  for (const auto& t : matrix.topic_ids()) out << ',' << t;
  out << '\n';
  for (StudentIndex s = 0; s < matrix.n_students(); ++s) {
    out << matrix.student_ids()[s];
    for (int r : matrix.row(s)) out << ',' << r;
    out << '\n';
  }
}

void write_matrix_csv(const std::string& path,
                      const RequirementMatrix& matrix) {
  auto out = open_out(path);
  write_matrix_csv(out, matrix);
}

void write_assignment_csv(std::ostream& out, const RequirementMatrix& matrix,
                          const std::vector<GroupIndex>& assignment,
                          const std::string& header) {
  if (assignment.size() != matrix.n_students()) {
    throw InvalidArgument("assignment length does not match matrix");
  }
  out << "student_id," << header << '\n';
  for (StudentIndex s = 0; s < assignment.size(); ++s) {
    out << matrix.student_ids()[s] << ',' << assignment[s] << '\n';
  }
}

void write_assignment_csv(const std::string& path,
                          const RequirementMatrix& matrix,
                          const std::vector<GroupIndex>& assignment,
                          const std::string& header) {
  auto out = open_out(path);
  write_assignment_csv(out, matrix, assignment, header);
}

std::vector<GroupIndex> read_assignment_csv(std::istream& in,
                                            const RequirementMatrix& matrix) {
  std::vector<long long> labels(matrix.n_students(), -1);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) fail(line_no, "expected student_id,group");
    if (!header_seen) {
      header_seen = true;
      if (fields[0] == "student_id") continue;
    }
    const StudentIndex s = matrix.student_index(fields[0]);
    const long long g = parse_integer(fields[1], line_no);
    if (g < 0) fail(line_no, "group must be >= 0");
    if (labels[s] != -1) fail(line_no, "duplicate student " + fields[0]);
    labels[s] = g;
  }
  std::vector<GroupIndex> out;
  out.reserve(labels.size());
  for (StudentIndex s = 0; s < labels.size(); ++s) {
    if (labels[s] < 0) {
      throw InvalidArgument("no label for student " + matrix.student_ids()[s]);
    }
    out.push_back(static_cast<GroupIndex>(labels[s]));
  }
  return out;
}

std::vector<GroupIndex> read_assignment_csv(const std::string& path,
                                            const RequirementMatrix& matrix) {
  auto in = open_in(path);
  return read_assignment_csv(in, matrix);
}

std::vector<PrecedenceConstraint> read_constraints_csv(
    std::istream& in, const RequirementMatrix& matrix) {
  std::map<TopicIndex, PrecedenceConstraint> by_target;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 3) {
      fail(line_no, "expected target_topic,prereq_topic,min_reps");
    }
    if (first) {
      first = false;
      if (fields[0] == "target_topic") continue;
    }
    const TopicIndex target = matrix.topic_index(fields[0]);
    const TopicIndex prereq = matrix.topic_index(fields[1]);
    const long long reps = parse_integer(fields[2], line_no);
    if (reps < 1) fail(line_no, "min_reps must be >= 1");
    auto& c = by_target[target];
    c.target = target;
    c.prerequisites.push_back({prereq, static_cast<int>(reps)});
  }
  std::vector<PrecedenceConstraint> out;
  out.reserve(by_target.size());
  for (auto& [target, c] : by_target) out.push_back(std::move(c));
  validate_constraints(out, matrix.n_topics());
  return out;
}

std::vector<PrecedenceConstraint> read_constraints_csv(
    const std::string& path, const RequirementMatrix& matrix) {
  auto in = open_in(path);
  return read_constraints_csv(in, matrix);
}

std::vector<double> read_value_column_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 2) fail(line_no, "expected id,value");
    if (first) {
      first = false;
      continue;
    }
    values.push_back(parse_double(fields[1], line_no));
  }
  return values;
}

std::vector<double> read_value_column_csv(const std::string& path) {
  auto in = open_in(path);
  return read_value_column_csv(in);
}

}  // namespace cohort
