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
#include <vector>

#include "cohort/errors.h"
#include "cohort/rng.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace cohort {
namespace {

using testing::random_matrix;

TEST(OccurrenceBenefitTest, UniformMatchesDefinition) {
  EXPECT_DOUBLE_EQ(occurrence_benefit(BenefitFunction::kUniform, 5, 3), 0.2);
  EXPECT_EQ(occurrence_benefit(BenefitFunction::kUniform, 5, 6), 0.0);
  EXPECT_EQ(occurrence_benefit(BenefitFunction::kUniform, 1, 1), 1.0);
}

TEST(OccurrenceBenefitTest, GeometricHalvesEachOccurrence) {
  EXPECT_EQ(occurrence_benefit(BenefitFunction::kGeometric, 3, 2), 0.25);
  EXPECT_EQ(occurrence_benefit(BenefitFunction::kGeometric, 3, 4), 0.0);
}

TEST(OccurrenceBenefitTest, RejectsZeroArguments) {
  EXPECT_THROW(occurrence_benefit(BenefitFunction::kUniform, 0, 1),
               InvalidArgument);
  EXPECT_THROW(occurrence_benefit(BenefitFunction::kUniform, 1, 0),
               InvalidArgument);
}

TEST(OccurrenceBenefitTest, NonIncreasingInOccurrence) {
  Rng rng(7);
  for (auto bf : {BenefitFunction::kUniform, BenefitFunction::kGeometric}) {
    for (int trial = 0; trial < 500; ++trial) {
      const int req = static_cast<int>(rng.uniform_int(1, 50));
      double prev = occurrence_benefit(bf, req, 1);
      for (int i = 2; i <= 60; ++i) {
        const double cur = occurrence_benefit(bf, req, i);
        ASSERT_LE(cur, prev) << "req=" << req << " i=" << i;
        prev = cur;
      }
    }
  }
}

TEST(StudentBenefitTest, Examples) {
  auto m = RequirementMatrix::from_rows({{1, 2}});
  EXPECT_DOUBLE_EQ(student_benefit(m, 0, RepetitionVector({1, 1}),
                                   BenefitFunction::kUniform),
                   1.5);
  auto single = RequirementMatrix::from_rows({{5}});
  EXPECT_DOUBLE_EQ(student_benefit(single, 0, RepetitionVector(std::vector<int>{9}),
                                   BenefitFunction::kUniform),
                   1.0);
  auto two = RequirementMatrix::from_rows({{2, 2}});
  EXPECT_EQ(student_benefit(two, 0, RepetitionVector({0, 0}),
                            BenefitFunction::kUniform),
            0.0);
}

TEST(StudentBenefitTest, DimensionMismatchThrows) {
  auto m = RequirementMatrix::from_rows({{1, 2}});
  EXPECT_THROW(student_benefit(m, 0, RepetitionVector({1}),
                               BenefitFunction::kUniform),
               InvalidArgument);
  EXPECT_THROW(student_benefit(m, 3, RepetitionVector({1, 1}),
                               BenefitFunction::kUniform),
               InvalidArgument);
}

TEST(StudentBenefitTest, ClosedFormsMatchOccurrenceSums) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto m = random_matrix(1, 5, 1, 8, rng);
    std::vector<int> reps(5);
    for (int& r : reps) r = static_cast<int>(rng.uniform_int(0, 10));
    for (auto bf : {BenefitFunction::kUniform, BenefitFunction::kGeometric}) {
      double expected = 0.0;
      for (TopicIndex t = 0; t < 5; ++t) {
        for (int i = 1; i <= reps[t]; ++i) {
          expected += occurrence_benefit(bf, m.req(0, t), i);
        }
      }
      EXPECT_NEAR(student_benefit(m, 0, RepetitionVector(reps), bf), expected,
                  1e-12);
    }
  }
}

TEST(StudentBenefitTest, UniformBoundsAndFullMastery) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto m = random_matrix(1, 4, 1, 6, rng);
    std::vector<int> reps(4);
    for (int& r : reps) r = static_cast<int>(rng.uniform_int(0, 8));
    const double b =
        student_benefit(m, 0, RepetitionVector(reps), BenefitFunction::kUniform);
    EXPECT_GE(b, 0.0);
    EXPECT_LE(b, 4.0);
    bool mastered = true;
    for (TopicIndex t = 0; t < 4; ++t) mastered &= reps[t] >= m.req(0, t);
    EXPECT_EQ(std::abs(b - 4.0) < kBenefitTolerance, mastered);
  }
}

TEST(StudentBenefitTest, SlotOrderDoesNotMatter) {
  Rng rng(5);
  auto m = random_matrix(3, 4, 1, 5, rng);
  std::vector<StudentIndex> group = {0, 1, 2};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<TopicIndex> slots(8);
    for (auto& t : slots) t = static_cast<TopicIndex>(rng.below(4));
    const double before = testing::slotwise_benefit(
        m, group, slots, BenefitFunction::kUniform);
    rng.shuffle(std::span<TopicIndex>(slots));
    const double after = testing::slotwise_benefit(m, group, slots,
                                                   BenefitFunction::kUniform);
    EXPECT_NEAR(before, after, 1e-12);
    const auto rv = repetition_vector_of(Schedule::from_topics(slots), 4);
    EXPECT_NEAR(group_benefit(m, group, rv, BenefitFunction::kUniform), after,
                1e-12);
  }
}

TEST(GroupBenefitTest, Examples) {
  auto m = RequirementMatrix::from_rows({{1, 2}, {1, 2}});
  std::vector<StudentIndex> both = {0, 1};
  EXPECT_DOUBLE_EQ(group_benefit(m, both, RepetitionVector({1, 1}),
                                 BenefitFunction::kUniform),
                   3.0);

  std::vector<StudentIndex> first = {0};
  EXPECT_DOUBLE_EQ(group_benefit(m, first, RepetitionVector({1, 2}),
                                 BenefitFunction::kUniform),
                   2.0);

  // 1/1 from s1 plus 2 * 1/4 from s2.
  auto mixed = RequirementMatrix::from_rows({{1}, {4}});
  EXPECT_DOUBLE_EQ(group_benefit(mixed, both, RepetitionVector(std::vector<int>{2}),
                                 BenefitFunction::kUniform),
                   1.5);
}

TEST(GroupBenefitTest, EmptyGroupThrows) {
  auto m = RequirementMatrix::from_rows({{1}});
  EXPECT_THROW(group_benefit(m, {}, RepetitionVector({1}),
                             BenefitFunction::kUniform),
               InvalidArgument);
}

TEST(MarginalBenefitTest, Examples) {
  auto m = RequirementMatrix::from_rows({{1}, {2}});
  std::vector<StudentIndex> g = {0, 1};
  EXPECT_DOUBLE_EQ(marginal_benefit(m, g, 0, 1, BenefitFunction::kUniform),
                   1.5);
  EXPECT_DOUBLE_EQ(marginal_benefit(m, g, 0, 2, BenefitFunction::kUniform),
                   0.5);
  EXPECT_EQ(marginal_benefit(m, g, 0, 3, BenefitFunction::kUniform), 0.0);
}

TEST(MarginalBenefitTest, EqualsGroupBenefitDifference) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto m = random_matrix(4, 3, 1, 5, rng);
    std::vector<StudentIndex> g = {0, 1, 2, 3};
    std::vector<int> reps(3);
    for (int& r : reps) r = static_cast<int>(rng.uniform_int(0, 6));
    const auto t = static_cast<TopicIndex>(rng.below(3));
    for (auto bf : {BenefitFunction::kUniform, BenefitFunction::kGeometric}) {
      const double base = group_benefit(m, g, RepetitionVector(reps), bf);
      auto more = reps;
      ++more[t];
      const double grown = group_benefit(m, g, RepetitionVector(more), bf);
      EXPECT_NEAR(grown - base, marginal_benefit(m, g, t, more[t], bf), 1e-12);
    }
  }
}

TEST(PartitionBenefitTest, AdditiveOverGroups) {
  Rng rng(23);
  auto m = random_matrix(6, 3, 1, 4, rng);
  Partition p;
  p.k = 2;
  p.assignment = {0, 1, 0, 1, 1, 0};
  p.group_schedules = {RepetitionVector({2, 1, 0}), RepetitionVector({0, 1, 3})};
  const double total = partition_benefit(m, p, BenefitFunction::kUniform);
  EXPECT_EQ(total, p.objective);
  const auto groups = p.groups();
  const double by_group =
      group_benefit(m, groups[0], p.group_schedules[0],
                    BenefitFunction::kUniform) +
      group_benefit(m, groups[1], p.group_schedules[1],
                    BenefitFunction::kUniform);
  EXPECT_NEAR(total, by_group, 1e-12);
}

TEST(PartitionBenefitTest, ZeroSchedulesScoreZero) {
  auto m = RequirementMatrix::from_rows({{1, 2}, {3, 1}});
  Partition p{2, {0, 1}, {RepetitionVector(2), RepetitionVector(2)}, 5.0};
  EXPECT_EQ(partition_benefit(m, p, BenefitFunction::kUniform), 0.0);
  EXPECT_EQ(p.objective, 0.0);
}

TEST(PartitionBenefitTest, InconsistentShapesThrow) {
  auto m = RequirementMatrix::from_rows({{1, 2}, {3, 1}});
  Partition short_assignment{1, {0}, {RepetitionVector(2)}, 0.0};
  EXPECT_THROW(partition_benefit(m, short_assignment, BenefitFunction::kUniform),
               InvalidArgument);
  Partition bad_group{1, {0, 1}, {RepetitionVector(2)}, 0.0};
  EXPECT_THROW(partition_benefit(m, bad_group, BenefitFunction::kUniform),
               InvalidArgument);
  Partition bad_topics{1, {0, 0}, {RepetitionVector(3)}, 0.0};
  EXPECT_THROW(partition_benefit(m, bad_topics, BenefitFunction::kUniform),
               InvalidArgument);
}

TEST(RepetitionVectorTest, CountsSlots) {
  std::vector<TopicIndex> slots = {0, 1, 0};
  auto schedule = Schedule::from_topics(slots);
  EXPECT_EQ(schedule[2], (Occurrence{0, 2}));
  auto rv = repetition_vector_of(schedule, 2);
  EXPECT_EQ(rv.reps(), (std::vector<int>{2, 1}));
  EXPECT_EQ(rv.total(), 3);

  EXPECT_EQ(repetition_vector_of(Schedule(), 3).reps(),
            (std::vector<int>{0, 0, 0}));

  std::vector<TopicIndex> same(5, 1);
  EXPECT_EQ(repetition_vector_of(Schedule::from_topics(same), 2)[1], 5);
}

TEST(ScheduleTest, RejectsOutOfSequenceOccurrences) {
  EXPECT_THROW(Schedule({{0, 2}}), InvalidArgument);
  EXPECT_THROW(Schedule({{0, 1}, {0, 1}}), InvalidArgument);
  EXPECT_NO_THROW(Schedule({{1, 1}, {0, 1}, {1, 2}}));
}

TEST(RequirementMatrixTest, ValidatesAndClamps) {
  EXPECT_THROW(RequirementMatrix::from_rows({{1, 0}}), InvalidArgument);
  EXPECT_THROW(RequirementMatrix::from_rows({{1, 2}, {1}}), InvalidArgument);
  auto m = RequirementMatrix::from_rows({{2'000'000, 3}});
  EXPECT_EQ(m.req(0, 0), kMaxRequirement);
  EXPECT_EQ(m.student_ids().front(), "s1");
  EXPECT_EQ(m.topic_ids().back(), "t2");
  EXPECT_EQ(m.topic_index("t2"), 1u);
  EXPECT_THROW(m.topic_index("nope"), InvalidArgument);
}

}  // namespace
}  // namespace cohort
