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

#include "harness/verify.h"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "cohort/errors.h"
#include "cohort/partitioner.h"
#include "cohort/rng.h"
#include "cohort/scheduler.h"

namespace cohort::tools {
namespace {

constexpr std::uint64_t kScheduleStream = 201;
constexpr std::uint64_t kPartitionStream = 202;
constexpr double kTolerance = 1e-9;

RequirementMatrix draw_matrix(std::size_t n, std::size_t m, int max_req,
                              Rng& rng) {
  std::vector<int> cells(n * m);
  for (int& c : cells) c = static_cast<int>(rng.uniform_int(1, max_req));
  return RequirementMatrix(n, m, std::move(cells));
}

std::string describe(const RequirementMatrix& matrix) {
  std::string out = "[";
  for (StudentIndex s = 0; s < matrix.n_students(); ++s) {
    if (s > 0) out += ' ';
    out += '[';
    for (TopicIndex t = 0; t < matrix.n_topics(); ++t) {
      if (t > 0) out += ',';
      out += std::to_string(matrix.req(s, t));
    }
    out += ']';
  }
  return out + "]";
}

OracleLimits limits_for(const VerifyOptions& o) {
  OracleLimits limits;
  limits.max_students = std::max(limits.max_students, o.max_group);
  limits.max_topics = std::max(limits.max_topics, o.max_topics);
  limits.max_d = std::max(limits.max_d, o.max_d);
  return limits;
}

void check_options(const VerifyOptions& o) {
  if (o.max_group < 1 || o.max_topics < 1 || o.max_d < 0 ||
      o.max_requirement < 1 || o.max_students < 1 || o.max_k < 1) {
    throw InvalidArgument("verify bounds must be positive");
  }
  const OracleLimits defaults;
  if (o.max_students > defaults.max_partition_students) {
    throw InvalidArgument(
        fmt::format("partition oracle handles at most {} students",
                    defaults.max_partition_students));
  }
  if (o.max_group > 8 || o.max_topics > 8 || o.max_d > 12) {
    throw InvalidArgument("schedule bounds too large for exhaustive search");
  }
}

}  // namespace

ScheduleInstance schedule_instance(const VerifyOptions& options,
                                   std::size_t index) {
  Rng rng = Rng::stream(options.seed, kScheduleStream, index);
  const auto n = static_cast<std::size_t>(
      rng.uniform_int(1, static_cast<std::int64_t>(options.max_group)));
  const auto m = static_cast<std::size_t>(
      rng.uniform_int(1, static_cast<std::int64_t>(options.max_topics)));
  const int d = static_cast<int>(rng.uniform_int(0, options.max_d));
  return {draw_matrix(n, m, options.max_requirement, rng), d};
}

PartitionInstance partition_instance(const VerifyOptions& options,
                                     std::size_t index) {
  Rng rng = Rng::stream(options.seed, kPartitionStream, index);
  const auto n = static_cast<std::size_t>(
      rng.uniform_int(1, static_cast<std::int64_t>(options.max_students)));
  const auto k = static_cast<std::size_t>(rng.uniform_int(
      1, static_cast<std::int64_t>(std::min(n, options.max_k))));
  const auto m = static_cast<std::size_t>(rng.uniform_int(
      1, static_cast<std::int64_t>(std::min<std::size_t>(options.max_topics,
                                                         3))));
  const int d = static_cast<int>(rng.uniform_int(0, std::min(options.max_d, 4)));
  return {draw_matrix(n, m, options.max_requirement, rng), k, d};
}

VerifyReport run_verify(const VerifyOptions& options) {
  check_options(options);
  const OracleLimits limits = limits_for(options);
  VerifyReport report;
  std::size_t first = 0;
  std::size_t last = options.instances;
  if (options.replay) {
    first = *options.replay;
    last = first + 1;
  }
  for (std::size_t i = first; i < last; ++i) {
    const auto inst = schedule_instance(options, i);
    std::vector<StudentIndex> group(inst.matrix.n_students());
    for (StudentIndex s = 0; s < group.size(); ++s) group[s] = s;
    const double greedy = schedule_group(inst.matrix, group, inst.d).benefit;
    const double best = brute_force_schedule(inst.matrix, group, inst.d,
                                             BenefitFunction::kUniform, limits)
                            .benefit;
    ++report.schedule_checked;
    if (std::abs(greedy - best) <= kTolerance) {
      ++report.schedule_passed;
    } else {
      report.failures.push_back(
          {"schedule", i,
           fmt::format("greedy {:.12f} vs optimum {:.12f}, d={}, req={}",
                       greedy, best, inst.d, describe(inst.matrix))});
    }
  }
  for (std::size_t i = first; i < last; ++i) {
    const auto inst = partition_instance(options, i);
    const auto best = brute_force_partition(
        inst.matrix, inst.k, inst.d, BenefitFunction::kUniform, limits);
    std::vector<std::string> problems;
    const double rescored =
        evaluate_partition(inst.matrix, best.assignment, inst.k, inst.d)
            .objective;
    if (std::abs(rescored - best.objective) > kTolerance) {
      problems.push_back(fmt::format("optimum re-scores to {:.12f}", rescored));
    }
    PartitionConfig cfg;
    cfg.k = inst.k;
    cfg.d = inst.d;
    cfg.seed = options.seed + i;
    const double heuristic = cohpart(inst.matrix, cfg).partition.objective;
    if (heuristic > best.objective + kTolerance) {
      problems.push_back(fmt::format("cohpart {:.12f} beats the optimum",
                                     heuristic));
    }
    if (inst.k == 1 && std::abs(heuristic - best.objective) > kTolerance) {
      problems.push_back(
          fmt::format("cohpart {:.12f} misses the K=1 optimum", heuristic));
    }
    ++report.partition_checked;
    if (problems.empty()) {
      ++report.partition_passed;
    } else {
      std::string detail;
      for (const auto& p : problems) detail += p + "; ";
      report.failures.push_back(
          {"partition", i,
           fmt::format("{}optimum {:.12f}, K={}, d={}, req={}", detail,
                       best.objective, inst.k, inst.d,
                       describe(inst.matrix))});
    }
  }
  return report;
}

void print_report(std::ostream& out, const VerifyOptions& options,
                  const VerifyReport& report) {
  out << fmt::format("schedule: {}/{} match the exhaustive optimum\n",
                     report.schedule_passed, report.schedule_checked);
  out << fmt::format("partition: {}/{} consistent with the exhaustive optimum\n",
                     report.partition_passed, report.partition_checked);
  for (const auto& f : report.failures) {
    out << fmt::format(
        "FAIL {} instance {}: {} (replay: cohort verify --seed {} --replay "
        "{})\n",
        f.suite, f.instance, f.detail, options.seed, f.instance);
  }
}

}  // namespace cohort::tools
