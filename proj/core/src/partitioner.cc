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

#include "cohort/partitioner.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "cohort/errors.h"
#include "cohort/scheduler.h"

namespace cohort {
namespace {

// Stream tags keep the algorithms' random draws independent for one seed.
constexpr std::uint64_t kCohpartStream = 1;
constexpr std::uint64_t kSampleStream = 2;
constexpr std::uint64_t kRandomStream = 3;
constexpr std::uint64_t kKmeansStream = 4;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

RepetitionVector center_of(const RequirementMatrix& matrix,
                           std::span<const StudentIndex> members, int d,
                           BenefitFunction bf) {
  if (members.empty()) return RepetitionVector(matrix.n_topics());
  return schedule_group(matrix, members, d, bf).repetitions;
}

// Index of the center that benefits s most. Ties keep `current` when it is
// among the best, otherwise the lowest index wins. Also reports that benefit.
std::pair<GroupIndex, double> best_center(
    const RequirementMatrix& matrix, StudentIndex s,
    const std::vector<RepetitionVector>& centers, GroupIndex current,
    BenefitFunction bf) {
  GroupIndex best = 0;
  double best_benefit = -1.0;
  for (GroupIndex j = 0; j < centers.size(); ++j) {
    const double b = student_benefit(matrix, s, centers[j], bf);
    if (b > best_benefit + kBenefitTolerance) {
      best = j;
      best_benefit = b;
    }
  }
  if (current < centers.size()) {
    const double b = student_benefit(matrix, s, centers[current], bf);
    if (b >= best_benefit - kBenefitTolerance) {
      best = current;
      best_benefit = b;
    }
  }
  return {best, best_benefit};
}

// Gives every empty group the worst-served student (lowest benefit under its
// current center, ties to the lowest index) taken from a group that keeps at
// least one member. Returns the groups whose membership changed.
std::vector<GroupIndex> repair_empty_groups(
    std::vector<GroupIndex>& assignment, std::vector<double>& benefit,
    std::size_t k) {
  std::vector<std::size_t> sizes(k, 0);
  for (GroupIndex g : assignment) ++sizes[g];
  std::vector<GroupIndex> touched;
  for (GroupIndex g = 0; g < k; ++g) {
    if (sizes[g] != 0) continue;
    StudentIndex pick = assignment.size();
    for (StudentIndex s = 0; s < assignment.size(); ++s) {
      if (sizes[assignment[s]] < 2) continue;
      if (pick == assignment.size() || benefit[s] < benefit[pick]) pick = s;
    }
    if (pick == assignment.size()) break;  // fewer students than groups
    touched.push_back(assignment[pick]);
    touched.push_back(g);
    --sizes[assignment[pick]];
    assignment[pick] = g;
    ++sizes[g];
    // The moved student is no longer a candidate for later empty groups.
    benefit[pick] = std::numeric_limits<double>::infinity();
  }
  return touched;
}

std::vector<std::vector<StudentIndex>> members_of(
    const std::vector<GroupIndex>& assignment, std::size_t k) {
  std::vector<std::vector<StudentIndex>> members(k);
  for (StudentIndex s = 0; s < assignment.size(); ++s) {
    members[assignment[s]].push_back(s);
  }
  return members;
}

PartitionResult cohpart_once(const RequirementMatrix& matrix,
                             const PartitionConfig& cfg, BenefitFunction bf,
                             Rng rng) {
  const std::size_t n = matrix.n_students();
  const std::size_t k = cfg.k;
  PartitionResult result;

  std::vector<GroupIndex> assignment = random_assignment(n, k, rng);
  auto members = members_of(assignment, k);
  std::vector<RepetitionVector> centers(k);
  for (GroupIndex g = 0; g < k; ++g) {
    centers[g] = center_of(matrix, members[g], cfg.d, bf);
  }
  std::vector<double> benefit(n);
  for (StudentIndex s = 0; s < n; ++s) {
    benefit[s] = student_benefit(matrix, s, centers[assignment[s]], bf);
  }
  if (!repair_empty_groups(assignment, benefit, k).empty()) {
    members = members_of(assignment, k);
    for (GroupIndex g = 0; g < k; ++g) {
      centers[g] = center_of(matrix, members[g], cfg.d, bf);
    }
  }

  Partition p{k, assignment, centers, 0.0};
  result.objective_trace.push_back(partition_benefit(matrix, p, bf));

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const auto start = Clock::now();
    result.iterations = iter;
    std::vector<bool> dirty(k, false);
    std::size_t moved = 0;
    for (StudentIndex s = 0; s < n; ++s) {
      auto [g, b] = best_center(matrix, s, centers, assignment[s], bf);
      benefit[s] = b;
      if (g != assignment[s]) {
        dirty[assignment[s]] = dirty[g] = true;
        assignment[s] = g;
        ++moved;
      }
    }
    if (moved == 0) {
      result.converged = true;
      result.iteration_ms.push_back(elapsed_ms(start));
      break;
    }
    for (GroupIndex g : repair_empty_groups(assignment, benefit, k)) {
      dirty[g] = true;
    }
    members = members_of(assignment, k);
    for (GroupIndex g = 0; g < k; ++g) {
      if (dirty[g]) centers[g] = center_of(matrix, members[g], cfg.d, bf);
    }
    p.assignment = assignment;
    p.group_schedules = centers;
    result.objective_trace.push_back(partition_benefit(matrix, p, bf));
    result.iteration_ms.push_back(elapsed_ms(start));
  }
  p.assignment = assignment;
  p.group_schedules = centers;
  p.objective = result.objective_trace.back();
  result.partition = std::move(p);
  return result;
}

// Squared Euclidean distance between a requirement row and a center.
double distance2(std::span<const int> row, std::span<const double> center) {
  double sum = 0.0;
  for (std::size_t t = 0; t < row.size(); ++t) {
    const double diff = row[t] - center[t];
    sum += diff * diff;
  }
  return sum;
}

struct LloydRun {
  std::vector<GroupIndex> assignment;
  double inertia = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> iteration_ms;
};

LloydRun lloyd(const RequirementMatrix& matrix, const PartitionConfig& cfg,
               Rng rng) {
  const std::size_t n = matrix.n_students();
  const std::size_t m = matrix.n_topics();
  const std::size_t k = cfg.k;
  std::vector<double> centers(k * m);
  auto center = [&](GroupIndex g) {
    return std::span<double>(centers.data() + g * m, m);
  };
  const auto seeds = rng.sample(n, k);
  for (GroupIndex g = 0; g < k; ++g) {
    auto row = matrix.row(seeds[g]);
    std::copy(row.begin(), row.end(), center(g).begin());
  }

  LloydRun run;
  run.assignment.assign(n, k);  // k means "unassigned"
  std::vector<double> dist(n, 0.0);
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const auto start = Clock::now();
    run.iterations = iter;
    std::size_t moved = 0;
    for (StudentIndex s = 0; s < n; ++s) {
      GroupIndex best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (GroupIndex g = 0; g < k; ++g) {
        const double d2 = distance2(matrix.row(s), center(g));
        if (d2 < best_d) {
          best = g;
          best_d = d2;
        }
      }
      dist[s] = best_d;
      if (best != run.assignment[s]) {
        run.assignment[s] = best;
        ++moved;
      }
    }
    if (moved == 0) {
      run.converged = true;
      run.iteration_ms.push_back(elapsed_ms(start));
      break;
    }

    std::vector<std::size_t> sizes(k, 0);
    std::fill(centers.begin(), centers.end(), 0.0);
    for (StudentIndex s = 0; s < n; ++s) {
      const GroupIndex g = run.assignment[s];
      ++sizes[g];
      auto row = matrix.row(s);
      auto c = center(g);
      for (std::size_t t = 0; t < m; ++t) c[t] += row[t];
    }
    std::vector<bool> used(n, false);
    for (GroupIndex g = 0; g < k; ++g) {
      if (sizes[g] > 0) {
        for (double& x : center(g)) x /= static_cast<double>(sizes[g]);
        continue;
      }
      // Re-seed at the point farthest from its center, ties to lowest index.
      StudentIndex far = n;
      for (StudentIndex s = 0; s < n; ++s) {
        if (used[s]) continue;
        if (far == n || dist[s] > dist[far]) far = s;
      }
      used[far] = true;
      auto row = matrix.row(far);
      std::copy(row.begin(), row.end(), center(g).begin());
    }
    run.iteration_ms.push_back(elapsed_ms(start));
  }

  run.inertia = 0.0;
  for (StudentIndex s = 0; s < n; ++s) {
    run.inertia += distance2(matrix.row(s), center(run.assignment[s]));
  }
  return run;
}

}  // namespace

void validate_config(const RequirementMatrix& matrix,
                     const PartitionConfig& cfg) {
  if (cfg.k == 0) throw InvalidArgument("K must be >= 1");
  if (cfg.k > matrix.n_students()) {
    throw InvalidArgument("K = " + std::to_string(cfg.k) + " exceeds " +
                          std::to_string(matrix.n_students()) + " students");
  }
  if (cfg.d < 0) throw InvalidArgument("deadline must be >= 0");
  if (cfg.max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
  if (cfg.restarts < 1) throw InvalidArgument("restarts must be >= 1");
  if (cfg.sample_multiplier < 1) {
    throw InvalidArgument("sample multiplier must be >= 1");
  }
}

std::vector<GroupIndex> random_assignment(std::size_t n, std::size_t k,
                                          Rng& rng) {
  std::vector<GroupIndex> assignment(n);
  for (GroupIndex& g : assignment) g = static_cast<GroupIndex>(rng.below(k));
  return assignment;
}

PartitionResult cohpart(const RequirementMatrix& matrix,
                        const PartitionConfig& cfg, BenefitFunction bf) {
  validate_config(matrix, cfg);
  const auto start = Clock::now();
  PartitionResult best;
  for (int r = 0; r < cfg.restarts; ++r) {
    PartitionResult run = cohpart_once(
        matrix, cfg, bf,
        Rng::stream(cfg.seed, kCohpartStream, static_cast<std::uint64_t>(r)));
    if (r == 0 || run.partition.objective >
                      best.partition.objective + kBenefitTolerance) {
      best = std::move(run);
    }
  }
  best.runtime_ms = elapsed_ms(start);
  return best;
}

PartitionResult cohpart_sampled(const RequirementMatrix& matrix,
                                const PartitionConfig& cfg,
                                BenefitFunction bf) {
  validate_config(matrix, cfg);
  const std::size_t n = matrix.n_students();
  const std::size_t sample_size = cfg.k * cfg.sample_multiplier;
  if (sample_size >= n) return cohpart(matrix, cfg, bf);

  const auto start = Clock::now();
  Rng rng = Rng::stream(cfg.seed, kSampleStream);
  std::vector<StudentIndex> sample = rng.sample(n, sample_size);
  std::sort(sample.begin(), sample.end());
  PartitionResult result = cohpart(matrix.select_rows(sample), cfg, bf);

  const auto& centers = result.partition.group_schedules;
  std::vector<GroupIndex> assignment(n, cfg.k);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    assignment[sample[i]] = result.partition.assignment[i];
  }
  for (StudentIndex s = 0; s < n; ++s) {
    if (assignment[s] != cfg.k) continue;
    assignment[s] = best_center(matrix, s, centers, cfg.k, bf).first;
  }
  result.partition = evaluate_partition(matrix, assignment, cfg.k, cfg.d, bf);
  result.objective_trace.push_back(result.partition.objective);
  result.runtime_ms = elapsed_ms(start);
  return result;
}

PartitionResult random_partition(const RequirementMatrix& matrix,
                                 const PartitionConfig& cfg,
                                 BenefitFunction bf) {
  validate_config(matrix, cfg);
  const auto start = Clock::now();
  Rng rng = Rng::stream(cfg.seed, kRandomStream);
  const auto assignment = random_assignment(matrix.n_students(), cfg.k, rng);
  PartitionResult result;
  result.partition = evaluate_partition(matrix, assignment, cfg.k, cfg.d, bf);
  result.objective_trace.push_back(result.partition.objective);
  result.converged = true;
  result.runtime_ms = elapsed_ms(start);
  return result;
}

PartitionResult kmeans_partition(const RequirementMatrix& matrix,
                                 const PartitionConfig& cfg,
                                 BenefitFunction bf) {
  validate_config(matrix, cfg);
  const auto start = Clock::now();
  LloydRun best;
  for (int r = 0; r < cfg.restarts; ++r) {
    LloydRun run = lloyd(
        matrix, cfg,
        Rng::stream(cfg.seed, kKmeansStream, static_cast<std::uint64_t>(r)));
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }
  PartitionResult result;
  result.partition =
      evaluate_partition(matrix, best.assignment, cfg.k, cfg.d, bf);
  result.objective_trace.push_back(result.partition.objective);
  result.iterations = best.iterations;
  result.converged = best.converged;
  result.iteration_ms = std::move(best.iteration_ms);
  result.runtime_ms = elapsed_ms(start);
  return result;
}

Partition evaluate_partition(const RequirementMatrix& matrix,
                             std::span<const GroupIndex> assignment,
                             std::size_t k, int d, BenefitFunction bf) {
  if (assignment.size() != matrix.n_students()) {
    throw InvalidArgument("assignment covers " +
                          std::to_string(assignment.size()) +
                          " students, matrix has " +
                          std::to_string(matrix.n_students()));
  }
  for (GroupIndex g : assignment) {
    if (g >= k) {
      throw InvalidArgument("group index " + std::to_string(g) +
                            " out of range for K = " + std::to_string(k));
    }
  }
  Partition p;
  p.k = k;
  p.assignment.assign(assignment.begin(), assignment.end());
  const auto members = p.groups();
  p.group_schedules.reserve(k);
  for (GroupIndex g = 0; g < k; ++g) {
    p.group_schedules.push_back(center_of(matrix, members[g], d, bf));
  }
  partition_benefit(matrix, p, bf);
  return p;
}

double partition_similarity(std::span<const GroupIndex> a,
                            std::span<const GroupIndex> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("labelings cover different numbers of students");
  }
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  auto pairs = [](double x) { return x * (x - 1.0) / 2.0; };

  std::map<std::pair<GroupIndex, GroupIndex>, std::size_t> joint;
  std::map<GroupIndex, std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    ++joint[{a[i], b[i]}];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, count] : joint) index += pairs(count);
  for (const auto& [key, count] : rows) sum_rows += pairs(count);
  for (const auto& [key, count] : cols) sum_cols += pairs(count);
  const double expected = sum_rows * sum_cols / pairs(static_cast<double>(n));
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace cohort
