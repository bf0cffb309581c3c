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

#include <sstream>

#include "cohort/errors.h"
#include "cohort/rng.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cohort {
namespace {

TEST(MatrixCsvTest, ReadsHeaderAndRows) {
  std::istringstream in(
      "student_id,algebra,geometry\r\n"
      "alice,1,2\n"
      "bob, 3 ,4\n"
      "\n");
  auto m = read_matrix_csv(in);
  EXPECT_EQ(m.n_students(), 2u);
  EXPECT_EQ(m.topic_ids(), (std::vector<std::string>{"algebra", "geometry"}));
  EXPECT_EQ(m.student_ids()[1], "bob");
  EXPECT_EQ(m.req(1, 0), 3);
}

TEST(MatrixCsvTest, WriteThenReadIsIdentity) {
  Rng rng(4);
  auto m = testing::random_matrix(7, 5, 1, 100, rng);
  std::ostringstream out;
  write_matrix_csv(out, m);
  std::istringstream in(out.str());
  EXPECT_EQ(read_matrix_csv(in), m);
}

TEST(MatrixCsvTest, RejectsBadInput) {
  std::istringstream zero("student_id,t1\ns1,0\n");
  EXPECT_THROW(read_matrix_csv(zero), InvalidArgument);
  std::istringstream ragged("student_id,t1,t2\ns1,1\n");
  EXPECT_THROW(read_matrix_csv(ragged), InvalidArgument);
  std::istringstream text("student_id,t1\ns1,two\n");
  EXPECT_THROW(read_matrix_csv(text), InvalidArgument);
  std::istringstream header("name,t1\ns1,1\n");
  EXPECT_THROW(read_matrix_csv(header), InvalidArgument);
  std::istringstream empty("");
  EXPECT_THROW(read_matrix_csv(empty), InvalidArgument);
}

TEST(AssignmentCsvTest, RoundTripsInAnyRowOrder) {
  auto m = RequirementMatrix::from_rows({{1}, {2}, {3}});
  std::istringstream in("student_id,group\ns3,1\ns1,0\ns2,1\n");
  EXPECT_EQ(read_assignment_csv(in, m), (std::vector<GroupIndex>{0, 1, 1}));
  std::ostringstream out;
  write_assignment_csv(out, m, {0, 1, 1}, "planted_group");
  EXPECT_EQ(out.str(), "student_id,planted_group\ns1,0\ns2,1\ns3,1\n");
}

TEST(AssignmentCsvTest, MissingStudentThrows) {
  auto m = RequirementMatrix::from_rows({{1}, {2}});
  std::istringstream in("student_id,group\ns1,0\n");
  EXPECT_THROW(read_assignment_csv(in, m), InvalidArgument);
}

TEST(ConstraintsCsvTest, MergesRowsByTarget) {
  auto m = RequirementMatrix::from_rows({{1, 1, 1}});
  std::istringstream in(
      "target_topic,prereq_topic,min_reps\n"
      "t3,t1,2\n"
      "t3,t2,1\n"
      "t2,t1,1\n");
  auto c = read_constraints_csv(in, m);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].target, 1u);
  EXPECT_EQ(c[1].target, 2u);
  EXPECT_EQ(c[1].prerequisites,
            (std::vector<Prerequisite>{{0, 2}, {1, 1}}));
}

TEST(ConstraintsCsvTest, EmptyFileMeansNoConstraints) {
  auto m = RequirementMatrix::from_rows({{1, 1}});
  std::istringstream in("");
  EXPECT_TRUE(read_constraints_csv(in, m).empty());
}

TEST(ConstraintsCsvTest, RejectsCyclesAndUnknownTopics) {
  auto m = RequirementMatrix::from_rows({{1, 1}});
  std::istringstream cycle("t1,t2,1\nt2,t1,1\n");
  EXPECT_THROW(read_constraints_csv(cycle, m), InvalidConstraints);
  std::istringstream unknown("t1,t9,1\n");
  EXPECT_THROW(read_constraints_csv(unknown, m), InvalidArgument);
}

TEST(ValueColumnCsvTest, ReadsSecondColumn) {
  std::istringstream in("course_id,difficulty\nCS101,-0.5\nCS210,1.25\n");
  EXPECT_EQ(read_value_column_csv(in), (std::vector<double>{-0.5, 1.25}));
}

}  // namespace
}  // namespace cohort
