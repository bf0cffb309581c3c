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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cohort/errors.h"
#include "cohort/io.h"
#include "gtest/gtest.h"
#include "harness/commands.h"
#include "harness/experiment.h"
#include "harness/spec_file.h"

namespace cohort::tools {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  fs::path dir = fs::temp_directory_path() / "cohort_harness_test" /
                 (std::string(info->test_suite_name()) + "." + info->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) rows.push_back(split_csv_line(line));
  return rows;
}

const char* kTinyPlan = R"([plan]
name = tiny
algorithms = random, kmeans, cohpart, cohpart_s
k = 1, 3
d = 6, avg
trials = 3
seed = 7

[dataset]
family = uniform
n_students = 12
n_topics = 5

[distribution]
uniform_lo = 1
uniform_hi = 6
)";

RunOptions tiny_run(const fs::path& dir, const std::string& out_name) {
  RunOptions options;
  options.plan_path = write_file(dir / "plan.ini", kTinyPlan).string();
  options.out_path = (dir / out_name).string();
  options.timing = false;
  return options;
}

TEST(RunCommandTest, RawCsvMatchesGoldenFile) {
  const auto dir = scratch_dir();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(tiny_run(dir, "raw.csv"), out, err), kExitOk) << err.str();
  EXPECT_EQ(slurp(dir / "raw.csv"),
            slurp(fs::path(COHORT_GOLDEN_DIR) / "tiny_raw.csv"));
  EXPECT_EQ(slurp(dir / "raw_aggregate.csv"),
            slurp(fs::path(COHORT_GOLDEN_DIR) / "tiny_aggregate.csv"));
}

TEST(RunCommandTest, HeadersAreFixed) {
  const auto dir = scratch_dir();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(tiny_run(dir, "raw.csv"), out, err), kExitOk);
  auto raw = read_csv(dir / "raw.csv");
  ASSERT_FALSE(raw.empty());
  EXPECT_EQ(raw[0], (std::vector<std::string>{"dataset", "algorithm", "K",
                                              "d", "seed", "objective",
                                              "iterations", "runtime_ms",
                                              "ari"}));
  // 2 K x 2 d x 4 algorithms x 3 trials.
  EXPECT_EQ(raw.size(), 1u + 48u);
  for (std::size_t i = 1; i < raw.size(); ++i) EXPECT_EQ(raw[i].size(), 9u);
  auto agg = read_csv(dir / "raw_aggregate.csv");
  EXPECT_EQ(agg[0],
            (std::vector<std::string>{
                "dataset", "algorithm", "K", "d", "trials", "objective_mean",
                "objective_ci95", "iterations_mean", "runtime_ms_mean",
                "ari_mean", "ari_ci95"}));
  EXPECT_EQ(agg.size(), 1u + 16u);
  EXPECT_EQ(read_csv(dir / "raw_errors.csv").size(), 1u);
}

TEST(RunCommandTest, RepeatedRunsAreByteIdentical) {
  const auto dir = scratch_dir();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(tiny_run(dir, "a.csv"), out, err), kExitOk);
  ASSERT_EQ(cmd_run(tiny_run(dir, "b.csv"), out, err), kExitOk);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_EQ(slurp(dir / "a_aggregate.csv"), slurp(dir / "b_aggregate.csv"));
}

TEST(RunCommandTest, AggregatesRecomputeFromRawRows) {
  const auto dir = scratch_dir();
  std::ostringstream out, err;
  auto options = tiny_run(dir, "raw.csv");
  options.trials = 5;
  ASSERT_EQ(cmd_run(options, out, err), kExitOk);
  // Fixed deadline only, so raw d equals the aggregate label.
  std::map<std::string, std::vector<double>> cells;
  for (const auto& row : read_csv(dir / "raw.csv")) {
    if (row[0] == "dataset" || row[3] != "6") continue;
    cells[row[1] + "|" + row[2]].push_back(std::stod(row[5]));
  }
  constexpr double kT975Df4 = 2.7764451051977987;
  int checked = 0;
  for (const auto& row : read_csv(dir / "raw_aggregate.csv")) {
    if (row[0] == "dataset" || row[3] != "6") continue;
    const auto& xs = cells.at(row[1] + "|" + row[2]);
    ASSERT_EQ(xs.size(), 5u);
    EXPECT_EQ(row[4], "5");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= 5.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double half = kT975Df4 * std::sqrt(ss / 4.0) / std::sqrt(5.0);
    EXPECT_NEAR(std::stod(row[5]), mean, 1e-5);
    EXPECT_NEAR(std::stod(row[6]), half, 1e-5);
    ++checked;
  }
  EXPECT_EQ(checked, 8);
}

TEST(RunCommandTest, SingleGroupMakesAllAlgorithmsEqual) {
  const auto dir = scratch_dir();
  std::ostringstream out, err;
  auto options = tiny_run(dir, "raw.csv");
  options.k_values = {1};
  ASSERT_EQ(cmd_run(options, out, err), kExitOk);
  std::map<std::string, std::vector<std::string>> by_cell;
  for (const auto& row : read_csv(dir / "raw.csv")) {
    if (row[0] == "dataset") continue;
    by_cell[row[3] + "|" + row[4]].push_back(row[5]);
  }
  ASSERT_FALSE(by_cell.empty());
  for (const auto& [cell, objectives] : by_cell) {
    ASSERT_EQ(objectives.size(), 4u);
    for (const auto& o : objectives) EXPECT_EQ(o, objectives.front()) << cell;
  }
}

TEST(RunCommandTest, OversizedKBecomesErrorRow) {
  const auto dir = scratch_dir();
  std::ostringstream out, err;
  auto options = tiny_run(dir, "raw.csv");
  options.k_values = {3, 50};
  options.algorithms = {"cohpart"};
  ASSERT_EQ(cmd_run(options, out, err), kExitOk);
  int errors = 0;
  int ok = 0;
  for (const auto& row : read_csv(dir / "raw.csv")) {
    if (row[0] == "dataset") continue;
    ASSERT_EQ(row.size(), 9u);
    if (row[2] == "50") {
      EXPECT_EQ(row[5], "");
      ++errors;
    } else {
      EXPECT_NE(row[5], "");
      ++ok;
    }
  }
  EXPECT_EQ(errors, 6);
  EXPECT_EQ(ok, 6);
  EXPECT_EQ(read_csv(dir / "raw_errors.csv").size(), 7u);
  EXPECT_NE(err.str().find("exceeds"), std::string::npos);
}

TEST(RunCommandTest, GroundTruthOrdering) {
  const auto dir = scratch_dir();
  write_file(dir / "plan.ini", R"([plan]
algorithms = random, kmeans, cohpart
k = 10
d = 50
trials = 5
seed = 1
out = raw.csv

[dataset]
family = groundtruth

[groundtruth]
n_groups = 5
group_size = 20
)");
  RunOptions options;
  options.plan_path = (dir / "plan.ini").string();
  options.timing = false;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_run(options, out, err), kExitOk) << err.str();
  std::map<std::string, double> mean;
  for (const auto& row : read_csv(dir / "raw_aggregate.csv")) {
    if (row[0] != "dataset") mean[row[1]] = std::stod(row[5]);
  }
  EXPECT_GE(mean["cohpart"], mean["kmeans"]);
  EXPECT_GE(mean["kmeans"], mean["random"]);
  // Planted labels give an ARI column.
  for (const auto& row : read_csv(dir / "raw.csv")) {
    if (row[0] != "dataset") EXPECT_NE(row[8], "");
  }
}

TEST(RunCommandTest, CohpartObjectiveGrowsWithDeadline) {
  const auto dir = scratch_dir();
  std::ostringstream out, err;
  auto options = tiny_run(dir, "raw.csv");
  options.algorithms = {"cohpart"};
  options.k_values = {3};
  options.d_values = {"0", "2", "4", "8", "16", "32"};
  ASSERT_EQ(cmd_run(options, out, err), kExitOk);
  std::map<std::string, double> prev;
  for (const auto& row : read_csv(dir / "raw.csv")) {
    if (row[0] == "dataset") continue;
    const double obj = std::stod(row[5]);
    auto it = prev.find(row[4]);
    if (it != prev.end()) {
      EXPECT_GE(obj, it->second - 1e-9) << "seed " << row[4] << " d " << row[3];
    }
    prev[row[4]] = obj;
  }
}

TEST(RunCommandTest, RejectsBadPlans) {
  const auto dir = scratch_dir();
  std::ostringstream out, err;
  RunOptions options;
  options.plan_path =
      write_file(dir / "p.ini", "[plan]\nk = 1\nd = 1\n").string();
  EXPECT_EQ(cmd_run(options, out, err), kExitValidation);
  options.plan_path =
      write_file(dir / "q.ini", std::string(kTinyPlan) + "colour = red\n")
          .string();
  EXPECT_EQ(cmd_run(options, out, err), kExitValidation);
  options.plan_path = write_file(dir / "r.ini", kTinyPlan).string();
  options.trials = 0;
  EXPECT_EQ(cmd_run(options, out, err), kExitValidation);
  options.trials.reset();
  options.base = 2;
  EXPECT_EQ(cmd_run(options, out, err), kExitValidation);
}

TEST(PlanTest, ParsesSweepsAndResolvesPaths) {
  std::istringstream in(R"([plan]
matrix = data/m.csv
labels = /abs/labels.csv
algorithms = cohpart_s,kmeans
k = 2, 4
d = 10, avg
benefit = geometric
)");
  const auto plan = parse_plan(in, "/base");
  EXPECT_EQ(plan.matrix_path, "/base/data/m.csv");
  EXPECT_EQ(plan.labels_path, "/abs/labels.csv");
  EXPECT_EQ(plan.algorithms, (std::vector<Algorithm>{
                                 Algorithm::kCohpartSampled,
                                 Algorithm::kKmeans}));
  EXPECT_EQ(plan.k_values, (std::vector<std::size_t>{2, 4}));
  ASSERT_EQ(plan.d_values.size(), 2u);
  EXPECT_EQ(plan.d_values[1].label(), "avg");
  EXPECT_EQ(plan.benefit, BenefitFunction::kGeometric);
  EXPECT_EQ(plan.trials, 5);
}

TEST(PlanTest, AverageDeadlineRounds) {
  auto m = RequirementMatrix::from_rows({{1, 2}, {2, 2}});
  EXPECT_EQ(resolve_deadline(parse_deadline("avg"), m), 4);  // 3.5 -> 4
  EXPECT_EQ(resolve_deadline(parse_deadline("9"), m), 9);
  EXPECT_THROW(parse_deadline("-1"), InvalidArgument);
  EXPECT_THROW(parse_deadline("ten"), InvalidArgument);
}

TEST(PlanTest, ConfidenceHalfWidth) {
  std::vector<double> one = {3.0};
  EXPECT_FALSE(ci95_half_width(one).has_value());
  std::vector<double> two = {1.0, 3.0};
  // t(0.975, 1) = 12.7062..., sd = sqrt(2).
  EXPECT_NEAR(*ci95_half_width(two), 12.706204736174707, 1e-9);
}

TEST(GenerateCommandTest, GroundTruthWritesLabels) {
  const auto dir = scratch_dir();
  GenerateOptions options;
  options.spec_path = write_file(dir / "gt.ini",
                                 "[dataset]\nfamily = groundtruth\nseed = 3\n")
                          .string();
  options.out_path = (dir / "gt.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_generate(options, out, err), kExitOk) << err.str();
  const auto m = read_matrix_csv((dir / "gt.csv").string());
  EXPECT_EQ(m.n_students(), 400u);
  EXPECT_EQ(m.n_topics(), 40u);
  const auto rows = read_csv(dir / "gt_labels.csv");
  EXPECT_EQ(rows.size(), 401u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"student_id", "planted_group"}));
}

TEST(GenerateCommandTest, TrivialSpec) {
  const auto dir = scratch_dir();
  GenerateOptions options;
  options.spec_path =
      write_file(dir / "one.ini",
                 "[dataset]\nfamily = normal\nn_students = 1\nn_topics = 1\n")
          .string();
  options.out_path = (dir / "one.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(cmd_generate(options, out, err), kExitOk);
  const auto m = read_matrix_csv(options.out_path);
  EXPECT_EQ(m.n_students(), 1u);
  EXPECT_EQ(m.n_topics(), 1u);
  EXPECT_FALSE(fs::exists(dir / "one_labels.csv"));
}

TEST(GenerateCommandTest, SameSeedIsByteIdentical) {
  const auto dir = scratch_dir();
  write_file(dir / "difficulties.csv", "course_id,difficulty\na,-1\nb,0.5\n");
  GenerateOptions options;
  options.spec_path = write_file(dir / "grm.ini", R"([dataset]
family = grm
n_students = 50
n_topics = 8

[grm]
difficulties = difficulties.csv
)")
                          .string();
  std::ostringstream out, err;
  options.out_path = (dir / "a.csv").string();
  ASSERT_EQ(cmd_generate(options, out, err), kExitOk) << err.str();
  options.out_path = (dir / "b.csv").string();
  ASSERT_EQ(cmd_generate(options, out, err), kExitOk);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  options.seed = 99;
  options.out_path = (dir / "c.csv").string();
  ASSERT_EQ(cmd_generate(options, out, err), kExitOk);
  EXPECT_NE(slurp(dir / "a.csv"), slurp(dir / "c.csv"));
  options.base = 1;
  options.step = 2;
  options.out_path = (dir / "d.csv").string();
  ASSERT_EQ(cmd_generate(options, out, err), kExitOk);
  for (int r : read_matrix_csv(options.out_path).cells()) {
    EXPECT_EQ(r % 2, 1);
    EXPECT_LE(r, 19);
  }
}

TEST(GenerateCommandTest, BadSpecFails) {
  const auto dir = scratch_dir();
  GenerateOptions options;
  options.out_path = (dir / "x.csv").string();
  std::ostringstream out, err;
  options.spec_path =
      write_file(dir / "a.ini", "[dataset]\nfamily = zipf\n").string();
  EXPECT_EQ(cmd_generate(options, out, err), kExitValidation);
  options.spec_path =
      write_file(dir / "b.ini", "[dataset]\nfamily = grm\n").string();
  EXPECT_EQ(cmd_generate(options, out, err), kExitValidation);
  options.spec_path =
      write_file(dir / "c.ini", "[dataset]\nfamily = uniform\nseed = -4\n")
          .string();
  EXPECT_EQ(cmd_generate(options, out, err), kExitValidation);
  EXPECT_NE(err.str().find("error:"), std::string::npos);
}

TEST(VerifyCommandTest, DefaultSuitePasses) {
  std::ostringstream out, err;
  VerifyOptions options;
  EXPECT_EQ(cmd_verify(options, out, err), kExitOk);
  EXPECT_NE(out.str().find("schedule: 200/200"), std::string::npos);
  EXPECT_NE(out.str().find("partition: 200/200"), std::string::npos);
}

TEST(VerifyCommandTest, ZeroInstancesIsEmptySuccess) {
  std::ostringstream out, err;
  VerifyOptions options;
  options.instances = 0;
  EXPECT_EQ(cmd_verify(options, out, err), kExitOk);
  EXPECT_NE(out.str().find("schedule: 0/0"), std::string::npos);
}

TEST(VerifyCommandTest, ReplayRegeneratesTheSameInstance) {
  VerifyOptions options;
  options.seed = 5;
  const auto a = schedule_instance(options, 17);
  const auto b = schedule_instance(options, 17);
  EXPECT_EQ(a.matrix, b.matrix);
  EXPECT_EQ(a.d, b.d);
  options.replay = 17;
  const auto report = run_verify(options);
  EXPECT_EQ(report.schedule_checked, 1u);
  EXPECT_EQ(report.partition_checked, 1u);
}

TEST(VerifyCommandTest, RejectsOversizedBounds) {
  std::ostringstream out, err;
  VerifyOptions options;
  options.max_students = 40;
  EXPECT_EQ(cmd_verify(options, out, err), kExitValidation);
}

class ScheduleCommandTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = scratch_dir();
    matrix_ = write_file(dir_ / "m.csv", "student_id,t1,t2\ns1,1,2\ns2,1,2\n")
                  .string();
  }
  fs::path dir_;
  std::string matrix_;
};

TEST_F(ScheduleCommandTest, WorkedExample) {
  ScheduleOptions options;
  options.matrix_path = matrix_;
  options.d = "2";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_schedule(options, out, err), kExitOk) << err.str();
  EXPECT_NE(out.str().find("\"benefit\": 3.0"), std::string::npos);
  EXPECT_NE(out.str().find("\"topic\": \"t2\""), std::string::npos);
}

TEST_F(ScheduleCommandTest, EmptyConstraintsChangeNothing) {
  ScheduleOptions options;
  options.matrix_path = matrix_;
  options.d = "3";
  std::ostringstream plain, constrained, err;
  ASSERT_EQ(cmd_schedule(options, plain, err), kExitOk);
  options.constraints_path =
      write_file(dir_ / "c.csv", "target_topic,prereq_topic,min_reps\n")
          .string();
  ASSERT_EQ(cmd_schedule(options, constrained, err), kExitOk) << err.str();
  EXPECT_EQ(plain.str(), constrained.str());
}

TEST_F(ScheduleCommandTest, ZeroDeadlineAndErrors) {
  ScheduleOptions options;
  options.matrix_path = matrix_;
  options.d = "0";
  options.group = "s2";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_schedule(options, out, err), kExitOk);
  EXPECT_NE(out.str().find("\"schedule\": []"), std::string::npos);
  EXPECT_NE(out.str().find("\"benefit\": 0.0"), std::string::npos);
  options.group = "s9";
  EXPECT_EQ(cmd_schedule(options, out, err), kExitValidation);
  options.group = "all";
  options.constraints_path =
      write_file(dir_ / "cyc.csv", "t1,t2,1\nt2,t1,1\n").string();
  EXPECT_EQ(cmd_schedule(options, out, err), kExitValidation);
}

TEST_F(ScheduleCommandTest, PartitionWritesAssignmentAndMetadata) {
  PartitionOptions options;
  options.matrix_path = matrix_;
  options.k = 2;
  options.d = "2";
  options.out_path = (dir_ / "p.csv").string();
  options.meta_path = (dir_ / "p.json").string();
  options.timing = false;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_partition(options, out, err), kExitOk) << err.str();
  const auto rows = read_csv(dir_ / "p.csv");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"student_id", "group"}));
  const std::string meta = slurp(dir_ / "p.json");
  EXPECT_NE(meta.find("\"algorithm\": \"cohpart\""), std::string::npos);
  EXPECT_NE(meta.find("\"objective\": 3.0"), std::string::npos);
  options.k = 3;
  EXPECT_EQ(cmd_partition(options, out, err), kExitValidation);
  options.k = 2;
  options.algorithm = "spectral";
  EXPECT_EQ(cmd_partition(options, out, err), kExitValidation);
}

}  // namespace
}  // namespace cohort::tools
