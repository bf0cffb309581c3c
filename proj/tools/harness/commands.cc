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

#include "harness/commands.h"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <fmt/format.h>
#include "json.hpp"

#include "cohort/errors.h"
#include "cohort/io.h"
#include "cohort/partitioner.h"
#include "cohort/scheduler.h"
#include "harness/spec_file.h"

namespace cohort::tools {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

std::ofstream create(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InvalidArgument(fmt::format("cannot write {}", path));
  return out;
}

std::string sibling(const std::string& path, const std::string& suffix) {
  const fs::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

}  // namespace

std::vector<StudentIndex> parse_group(const std::string& spec,
                                      const RequirementMatrix& matrix) {
  std::vector<StudentIndex> group;
  if (spec == "all") {
    for (StudentIndex s = 0; s < matrix.n_students(); ++s) group.push_back(s);
    return group;
  }
  for (const auto& id : split_csv_line(spec)) {
    if (id.empty()) continue;
    group.push_back(matrix.student_index(id));
  }
  if (group.empty()) throw InvalidArgument("empty group");
  return group;
}

int cmd_generate(const GenerateOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    if (options.out_path.empty()) throw InvalidArgument("--out is required");
    DatasetSpec spec = load_dataset_spec(options.spec_path);
    if (options.seed) spec.seed = *options.seed;
    override_grade_mapping(spec, options.base, options.step);
    const Dataset data = generate(spec);
    {
      auto file = create(options.out_path);
      write_matrix_csv(file, data.matrix);
    }
    out << fmt::format("wrote {} x {} matrix to {}\n",
                       data.matrix.n_students(), data.matrix.n_topics(),
                       options.out_path);
    if (data.labels) {
      const std::string labels = options.labels_path.empty()
                                     ? sibling(options.out_path, "_labels.csv")
                                     : options.labels_path;
      auto file = create(labels);
      write_assignment_csv(file, data.matrix, *data.labels, "planted_group");
      out << fmt::format("wrote planted labels to {}\n", labels);
    }
    return kExitOk;
  });
}

ExperimentPlan resolve_plan(const RunOptions& options) {
  ExperimentPlan plan = load_plan(options.plan_path);
  if (options.seed) plan.seed = *options.seed;
  if (!options.k_values.empty()) plan.k_values = options.k_values;
  if (!options.d_values.empty()) {
    plan.d_values.clear();
    for (const auto& d : options.d_values) {
      plan.d_values.push_back(parse_deadline(d));
    }
  }
  if (!options.algorithms.empty()) {
    plan.algorithms.clear();
    for (const auto& a : options.algorithms) {
      plan.algorithms.push_back(parse_algorithm(a));
    }
  }
  if (options.trials) plan.trials = *options.trials;
  if (options.restarts) plan.restarts = *options.restarts;
  if (options.sample_c) plan.sample_c = *options.sample_c;
  if (options.base || options.step) {
    if (!plan.dataset) {
      throw InvalidConfig("base/step apply only to a generated GRM dataset");
    }
    override_grade_mapping(*plan.dataset, options.base, options.step);
  }
  if (!options.out_path.empty()) {
    plan.out_path = options.out_path;
    plan.aggregate_path.clear();
    plan.errors_path.clear();
  }
  if (!plan.out_path.empty()) {
    if (plan.aggregate_path.empty()) {
      plan.aggregate_path = sibling(plan.out_path, "_aggregate.csv");
    }
    if (plan.errors_path.empty()) {
      plan.errors_path = sibling(plan.out_path, "_errors.csv");
    }
  }
  validate_plan(plan);
  return plan;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentPlan plan = resolve_plan(options);
    RunSettings settings;
    settings.timing = options.timing;
    const auto rows = run_plan(plan, settings);
    const auto agg = aggregate(plan, rows);
    std::size_t failed = 0;
    for (const auto& row : rows) failed += row.objective ? 0 : 1;
    if (plan.out_path.empty()) {
      write_raw_csv(out, rows, settings);
    } else {
      {
        auto file = create(plan.out_path);
        write_raw_csv(file, rows, settings);
      }
      {
        auto file = create(plan.aggregate_path);
        write_aggregate_csv(file, agg);
      }
      {
        auto file = create(plan.errors_path);
        write_errors_csv(file, rows);
      }
      out << fmt::format("wrote {} rows to {}, {} cells to {}\n", rows.size(),
                         plan.out_path, agg.size(), plan.aggregate_path);
    }
    for (const auto& row : rows) {
      if (row.objective) continue;
      err << fmt::format("warning: {} K={} d={} seed={}: {}\n",
                         to_string(row.algorithm), row.k, row.d, row.seed,
                         row.error);
    }
    if (failed > 0) {
      err << fmt::format("{} of {} cells failed\n", failed, rows.size());
    }
    return kExitOk;
  });
}

int cmd_verify(const VerifyOptions& options, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const auto report = run_verify(options);
    print_report(out, options, report);
    return report.ok() ? kExitOk : kExitVerifyFailed;
  });
}

int cmd_schedule(const ScheduleOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const auto matrix = read_matrix_csv(options.matrix_path);
    const auto group = parse_group(options.group, matrix);
    const auto bf = parse_benefit_function(options.benefit);
    int d = 0;
    const DeadlineSpec deadline = parse_deadline(options.d);
    if (deadline.average) {
      d = resolve_deadline(deadline, matrix.select_rows(group));
    } else {
      d = deadline.value;
    }
    GroupSchedule result;
    if (options.constraints_path.empty()) {
      result = schedule_group(matrix, group, d, bf);
    } else {
      const auto constraints =
          read_constraints_csv(options.constraints_path, matrix);
      result = schedule_group_constrained(
          matrix, group, d, bf, TieBreakPolicy::kLowestTopicIndex,
          constraints);
    }
    Json doc;
    doc["d"] = d;
    doc["benefit"] = result.benefit;
    Json members = Json::array();
    for (StudentIndex s : group) members.push_back(matrix.student_ids()[s]);
    doc["group"] = members;
    Json slots = Json::array();
    for (std::size_t i = 0; i < result.schedule.size(); ++i) {
      const auto& occ = result.schedule[i];
      slots.push_back({{"slot", i + 1},
                       {"topic", matrix.topic_ids()[occ.topic]},
                       {"occurrence", occ.index}});
    }
    doc["schedule"] = slots;
    Json reps = Json::object();
    for (TopicIndex t = 0; t < matrix.n_topics(); ++t) {
      reps[matrix.topic_ids()[t]] = result.repetitions[t];
    }
    doc["repetitions"] = reps;
    if (options.out_path.empty()) {
      out << doc.dump(2) << '\n';
    } else {
      auto file = create(options.out_path);
      file << doc.dump(2) << '\n';
    }
    return kExitOk;
  });
}

int cmd_partition(const PartitionOptions& options, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    const auto matrix = read_matrix_csv(options.matrix_path);
    const auto algorithm = parse_algorithm(options.algorithm);
    PartitionConfig cfg;
    cfg.k = options.k;
    cfg.d = resolve_deadline(parse_deadline(options.d), matrix);
    cfg.seed = options.seed;
    cfg.restarts = options.restarts;
    cfg.sample_multiplier = options.sample_c;
    cfg.max_iters = options.max_iters;
    const auto bf = parse_benefit_function(options.benefit);
    const auto result = run_algorithm(algorithm, matrix, cfg, bf);
    const auto& assignment = result.partition.assignment;

    Json meta;
    meta["algorithm"] = to_string(algorithm);
    meta["K"] = cfg.k;
    meta["d"] = cfg.d;
    meta["seed"] = cfg.seed;
    meta["objective"] = result.partition.objective;
    meta["iterations"] = result.iterations;
    meta["converged"] = result.converged;
    meta["runtime_ms"] = options.timing ? result.runtime_ms : 0.0;
    meta["restarts"] = cfg.restarts;
    meta["sample_c"] = cfg.sample_multiplier;
    if (!options.labels_path.empty()) {
      const auto labels = read_assignment_csv(options.labels_path, matrix);
      meta["ari"] = partition_similarity(assignment, labels);
    }

    if (options.out_path.empty()) {
      write_assignment_csv(out, matrix, assignment, "group");
    } else {
      auto file = create(options.out_path);
      write_assignment_csv(file, matrix, assignment, "group");
    }
    if (!options.meta_path.empty()) {
      auto file = create(options.meta_path);
      file << meta.dump(2) << '\n';
    } else if (!options.out_path.empty()) {
      out << meta.dump(2) << '\n';
    }
    return kExitOk;
  });
}

}  // namespace cohort::tools
