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

// cohort: generate datasets, run partitioning sweeps, verify against the
// exhaustive oracles, and schedule or partition a single matrix.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "harness/commands.h"

namespace {

using cohort::tools::kExitUsage;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohort scheduling and partitioning experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("cohort 0.1.0"));

  cohort::tools::GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset");
  generate->add_option("spec", gen.spec_path, "Dataset spec (INI)")
      ->required()
      ->check(CLI::ExistingFile);
  generate->add_option("--out", gen.out_path, "Matrix CSV path")->required();
  generate->add_option("--labels", gen.labels_path,
                       "Planted label CSV path (GroundTruth only)");
  generate->add_option("--seed", gen.seed, "Override the spec seed");
  generate->add_option("--base", gen.base, "GRM: repetitions for the top grade");
  generate->add_option("--step", gen.step, "GRM: extra repetitions per grade");

  cohort::tools::RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment plan");
  run_cmd->add_option("plan", run.plan_path, "Plan file (INI)")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", run.seed, "First trial seed");
  run_cmd->add_option("--k", run.k_values, "K sweep, e.g. 1,5,10")
      ->delimiter(',');
  run_cmd->add_option("--d", run.d_values, "d sweep, integers or 'avg'")
      ->delimiter(',');
  run_cmd->add_option("--algo", run.algorithms,
                      "random, kmeans, cohpart, cohpart_s")
      ->delimiter(',');
  run_cmd->add_option("--trials", run.trials, "Trials per cell");
  run_cmd->add_option("--restarts", run.restarts, "Restarts per run");
  run_cmd->add_option("--sample-c", run.sample_c,
                      "cohpart_s sample multiplier");
  run_cmd->add_option("--base", run.base, "GRM: repetitions for the top grade");
  run_cmd->add_option("--step", run.step, "GRM: extra repetitions per grade");
  run_cmd->add_option("--out", run.out_path, "Raw results CSV");
  bool run_no_timing = false;
  run_cmd->add_flag("--no-timing", run_no_timing,
                    "Write runtime_ms as 0 for byte-identical reruns");

  cohort::tools::VerifyOptions ver;
  auto* verify = app.add_subcommand("verify", "Check heuristics against oracles");
  verify->add_option("--instances", ver.instances,
                     "Instances per suite")
      ->capture_default_str();
  verify->add_option("--seed", ver.seed, "Instance seed")->capture_default_str();
  verify->add_option("--replay", ver.replay, "Run only this instance index");
  verify->add_option("--max-group", ver.max_group, "Schedule group size bound")
      ->capture_default_str();
  verify->add_option("--max-topics", ver.max_topics, "Topic count bound")
      ->capture_default_str();
  verify->add_option("--max-d", ver.max_d, "Deadline bound")
      ->capture_default_str();
  verify->add_option("--max-students", ver.max_students,
                     "Partition population bound")
      ->capture_default_str();

  cohort::tools::ScheduleOptions sched;
  auto* schedule = app.add_subcommand("schedule", "Schedule one group");
  schedule->add_option("matrix", sched.matrix_path, "Requirement matrix CSV")
      ->required()
      ->check(CLI::ExistingFile);
  schedule->add_option("--group", sched.group,
                       "'all' or comma-separated student ids")
      ->capture_default_str();
  schedule->add_option("--d", sched.d, "Deadline, integer or 'avg'")
      ->required();
  schedule->add_option("--constraints", sched.constraints_path,
                       "Precedence constraints CSV")
      ->check(CLI::ExistingFile);
  schedule->add_option("--benefit", sched.benefit, "uniform or geometric")
      ->capture_default_str();
  schedule->add_option("--out", sched.out_path, "JSON output path");

  cohort::tools::PartitionOptions part;
  auto* partition = app.add_subcommand("partition", "Partition one matrix");
  partition->add_option("matrix", part.matrix_path, "Requirement matrix CSV")
      ->required()
      ->check(CLI::ExistingFile);
  partition->add_option("--algo", part.algorithm,
                        "random, kmeans, cohpart, cohpart_s")
      ->capture_default_str();
  partition->add_option("--k", part.k, "Number of groups")->required();
  partition->add_option("--d", part.d, "Deadline, integer or 'avg'")
      ->capture_default_str();
  partition->add_option("--seed", part.seed, "Seed")->capture_default_str();
  partition->add_option("--restarts", part.restarts, "Restarts")
      ->capture_default_str();
  partition->add_option("--sample-c", part.sample_c,
                        "cohpart_s sample multiplier")
      ->capture_default_str();
  partition->add_option("--max-iters", part.max_iters, "Iteration cap")
      ->capture_default_str();
  partition->add_option("--benefit", part.benefit, "uniform or geometric")
      ->capture_default_str();
  partition->add_option("--out", part.out_path, "Assignment CSV path");
  partition->add_option("--meta", part.meta_path, "Metadata JSON path");
  partition->add_option("--labels", part.labels_path,
                        "Planted labels CSV, adds ARI to the metadata");
  bool part_no_timing = false;
  partition->add_flag("--no-timing", part_no_timing,
                      "Write runtime_ms as 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*generate) return cohort::tools::cmd_generate(gen, std::cout, std::cerr);
  if (*run_cmd) {
    run.timing = !run_no_timing;
    return cohort::tools::cmd_run(run, std::cout, std::cerr);
  }
  if (*verify) return cohort::tools::cmd_verify(ver, std::cout, std::cerr);
  if (*schedule) {
    return cohort::tools::cmd_schedule(sched, std::cout, std::cerr);
  }
  part.timing = !part_no_timing;
  return cohort::tools::cmd_partition(part, std::cout, std::cerr);
}
