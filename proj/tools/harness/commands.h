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

#ifndef COHORT_TOOLS_HARNESS_COMMANDS_H_
#define COHORT_TOOLS_HARNESS_COMMANDS_H_
// Subcommand bodies of the `cohort` tool, callable without a process.
//
// Exit codes: 0 success, 1 usage, 2 validation, 3 verification failure.
// Errors are reported on `err` as a single "error: ..." line.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cohort/model.h"
#include "harness/experiment.h"
#include "harness/verify.h"

namespace cohort::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitVerifyFailed = 3,
};

struct GenerateOptions {
  std::string spec_path;
  std::string out_path;
  // Defaults to <out stem>_labels.csv next to the matrix.
  std::string labels_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> base;
  std::optional<int> step;
};

struct RunOptions {
  std::string plan_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> k_values;
  std::vector<std::string> d_values;
  std::vector<std::string> algorithms;
  std::optional<int> trials;
  std::optional<int> restarts;
  std::optional<std::size_t> sample_c;
  std::optional<int> base;
  std::optional<int> step;
  std::string out_path;
  bool timing = true;
};

struct ScheduleOptions {
  std::string matrix_path;
  // "all" or a comma-separated list of student ids.
  std::string group = "all";
  std::string d = "0";
  std::string constraints_path;
  std::string benefit = "uniform";
  std::string out_path;
};

struct PartitionOptions {
  std::string matrix_path;
  std::string algorithm = "cohpart";
  std::size_t k = 1;
  std::string d = "avg";
  std::uint64_t seed = 0;
  int restarts = 1;
  std::size_t sample_c = 4;
  int max_iters = 100;
  std::string benefit = "uniform";
  // Assignment CSV; stdout when empty.
  std::string out_path;
  // Metadata JSON; stdout when empty and the assignment went to a file.
  std::string meta_path;
  // Optional planted labels; adds "ari" to the metadata.
  std::string labels_path;
  bool timing = true;
};

int cmd_generate(const GenerateOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out,
               std::ostream& err);
int cmd_schedule(const ScheduleOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_partition(const PartitionOptions& options, std::ostream& out,
                  std::ostream& err);

// The plan after command-line overrides.
ExperimentPlan resolve_plan(const RunOptions& options);

// Students named by a schedule group spec.
std::vector<StudentIndex> parse_group(const std::string& spec,
                                      const RequirementMatrix& matrix);

}  // namespace cohort::tools

#endif  // COHORT_TOOLS_HARNESS_COMMANDS_H_
