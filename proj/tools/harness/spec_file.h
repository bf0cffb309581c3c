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

#ifndef COHORT_TOOLS_HARNESS_SPEC_FILE_H_
#define COHORT_TOOLS_HARNESS_SPEC_FILE_H_
// INI readers for dataset specs and experiment plans.
//
// Dataset spec:
//   [dataset]       family, seed, n_students, n_topics
//   [groundtruth]   n_groups, group_size, selected_per_group, n_topics, d,
//                   filler_mean, filler_sigma
//   [distribution]  pareto_alpha, pareto_scale, normal_mean, normal_sigma,
//                   uniform_lo, uniform_hi
//   [grm]           difficulties (CSV path), ability_mean, ability_sigma,
//                   discrimination, categories, threshold_offsets, base, step
//
// Plan:
//   [plan]  name, dataset (spec path) | matrix (CSV path) [labels],
//           algorithms, k, d, trials, seed, restarts, sample_c, max_iters,
//           benefit, base, step, out, aggregate_out, errors_out
// A plan may also carry the dataset sections inline instead of `dataset`.
// Relative paths are resolved against the directory of the file naming them.
// Unknown sections and keys are rejected.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cohort/datagen.h"
#include "harness/experiment.h"

namespace cohort::tools {

DatasetSpec parse_dataset_spec(std::istream& in,
                               const std::filesystem::path& base_dir);
DatasetSpec load_dataset_spec(const std::filesystem::path& path);

ExperimentPlan parse_plan(std::istream& in,
                          const std::filesystem::path& base_dir);
ExperimentPlan load_plan(const std::filesystem::path& path);

// Applies base/step to a GRM dataset; InvalidConfig for any other family.
void override_grade_mapping(DatasetSpec& spec, std::optional<int> base,
                            std::optional<int> step);

}  // namespace cohort::tools

#endif  // COHORT_TOOLS_HARNESS_SPEC_FILE_H_
