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

#ifndef COHORT_TOOLS_HARNESS_EXPERIMENT_H_
#define COHORT_TOOLS_HARNESS_EXPERIMENT_H_
// Sweep runner behind `cohort run`.
//
// Raw CSV, one row per (K, d, algorithm, trial):
//   dataset,algorithm,K,d,seed,objective,iterations,runtime_ms,ari
// Aggregate CSV, one row per (dataset, algorithm, K, d entry):
//   dataset,algorithm,K,d,trials,objective_mean,objective_ci95,
//   iterations_mean,runtime_ms_mean,ari_mean,ari_ci95
// Errors CSV, one row per failed cell:
//   dataset,algorithm,K,d,seed,error

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohort/datagen.h"
#include "cohort/model.h"
#include "cohort/partitioner.h"

namespace cohort::tools {

inline constexpr std::string_view kRawHeader =
    "dataset,algorithm,K,d,seed,objective,iterations,runtime_ms,ari";
inline constexpr std::string_view kAggregateHeader =
    "dataset,algorithm,K,d,trials,objective_mean,objective_ci95,"
    "iterations_mean,runtime_ms_mean,ari_mean,ari_ci95";
inline constexpr std::string_view kErrorsHeader =
    "dataset,algorithm,K,d,seed,error";

enum class Algorithm { kRandom, kKmeans, kCohpart, kCohpartSampled };

Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm algorithm);
const std::vector<Algorithm>& all_algorithms();

PartitionResult run_algorithm(Algorithm algorithm,
                              const RequirementMatrix& matrix,
                              const PartitionConfig& cfg, BenefitFunction bf);

// A d sweep entry: a fixed deadline or the average per-student requirement
// sum of the dataset, rounded to the nearest integer.
struct DeadlineSpec {
  bool average = false;
  int value = 0;

  std::string label() const;
  friend bool operator==(const DeadlineSpec&, const DeadlineSpec&) = default;
};

DeadlineSpec parse_deadline(std::string_view text);
int resolve_deadline(const DeadlineSpec& spec, const RequirementMatrix& matrix);

struct ExperimentPlan {
  std::string name;
  // Either a generated dataset (regenerated with every trial seed) or a fixed
  // matrix file with optional planted labels.
  std::optional<DatasetSpec> dataset;
  std::string matrix_path;
  std::string labels_path;

  std::vector<Algorithm> algorithms = all_algorithms();
  std::vector<std::size_t> k_values;
  std::vector<DeadlineSpec> d_values;
  int trials = 5;
  std::uint64_t seed = 0;
  int restarts = 1;
  std::size_t sample_c = 4;
  int max_iters = 100;
  BenefitFunction benefit = BenefitFunction::kUniform;

  std::string out_path;
  std::string aggregate_path;
  std::string errors_path;
};

// Throws InvalidConfig on empty sweeps, trials < 1 or a missing data source.
void validate_plan(const ExperimentPlan& plan);

// Dataset column value: the plan name, else the family or matrix file stem.
std::string dataset_name(const ExperimentPlan& plan);

// The dataset used by trial `trial` (seed plan.seed + trial).
Dataset materialize(const ExperimentPlan& plan, int trial);

struct RunRow {
  std::string dataset;
  Algorithm algorithm = Algorithm::kCohpart;
  std::size_t k = 0;
  std::size_t d_index = 0;
  int d = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  // Unset when the cell failed; `error` then holds the reason.
  std::optional<double> objective;
  int iterations = 0;
  double runtime_ms = 0.0;
  std::optional<double> ari;
  std::string error;
};

struct RunSettings {
  // When false runtime_ms is written as 0 and reruns are byte-identical.
  bool timing = true;
};

// Rows come back ordered by K, then d, then algorithm (plan order), then
// trial.
std::vector<RunRow> run_plan(const ExperimentPlan& plan,
                             const RunSettings& settings = {});

struct AggregateRow {
  std::string dataset;
  Algorithm algorithm = Algorithm::kCohpart;
  std::size_t k = 0;
  std::string d_label;
  std::size_t trials = 0;
  double objective_mean = 0.0;
  std::optional<double> objective_ci95;
  double iterations_mean = 0.0;
  double runtime_ms_mean = 0.0;
  std::optional<double> ari_mean;
  std::optional<double> ari_ci95;
};

// Successful rows only, grouped by (dataset, algorithm, K, d entry).
std::vector<AggregateRow> aggregate(const ExperimentPlan& plan,
                                    std::span<const RunRow> rows);

// Half-width of the two-sided 95% Student-t interval for the mean; unset for
// fewer than two values.
std::optional<double> ci95_half_width(std::span<const double> values);

void write_raw_csv(std::ostream& out, std::span<const RunRow> rows,
                   const RunSettings& settings);
void write_aggregate_csv(std::ostream& out,
                         std::span<const AggregateRow> rows);
void write_errors_csv(std::ostream& out, std::span<const RunRow> rows);

std::string csv_field(std::string_view text);

}  // namespace cohort::tools

#endif  // COHORT_TOOLS_HARNESS_EXPERIMENT_H_
