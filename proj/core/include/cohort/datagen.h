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

#ifndef COHORT_DATAGEN_H_
#define COHORT_DATAGEN_H_

// Synthetic requirement matrices.
//
//   GroundTruth  planted groups; each group has a few selected topics whose
//                requirements sum to the deadline for every member, all other
//                topics get round(Normal(d/5, 3)) filler.
//   Pareto       ceil(Pareto(alpha, scale)) per cell.
//   Normal       round(Normal(mean, sigma)) per cell, clamped to >= 1.
//   Uniform      uniform integer in [lo, hi] per cell.
//   GRM          graded-response-model grades (ability ~ Normal, per-course
//                difficulty resampled from a kernel density over a source
//                list), mapped to repetitions by base + step * grade rank.
//
// All draws come from per-cell or per-row Rng streams keyed by the seed, so
// output depends only on (spec, seed).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohort/model.h"
#include "cohort/rng.h"

namespace cohort {

struct GroundTruthSpec {
  std::size_t n_groups = 10;
  std::size_t group_size = 40;
  std::size_t selected_per_group = 5;
  std::size_t n_topics = 40;
  int d = 50;
  // Negative means d / 5.
  double filler_mean = -1.0;
  double filler_sigma = 3.0;
};

struct PlantedDataset {
  RequirementMatrix matrix;
  std::vector<GroupIndex> labels;
  // Selected topics of each planted group, in increasing order.
  std::vector<std::vector<TopicIndex>> selected_topics;
};

// Students are laid out group by group: rows [g * group_size, (g+1) *
// group_size) carry label g. Throws InvalidArgument for an infeasible spec.
PlantedDataset gen_ground_truth(const GroundTruthSpec& spec,
                                std::uint64_t seed);

enum class Family { kGroundTruth, kPareto, kNormal, kUniform, kGrm };

Family parse_family(std::string_view name);
std::string_view to_string(Family family);

struct DistributionParams {
  double pareto_alpha = 2.0;
  double pareto_scale = 1.0;
  double normal_mean = 30.0;
  double normal_sigma = 5.0;
  int uniform_lo = 5;
  int uniform_hi = 100;
};

inline const std::vector<std::string>& default_grade_categories() {
  static const std::vector<std::string> kCategories = {
      "A", "A-", "B+", "B", "B-", "C+", "C", "C-", "D", "F"};
  return kCategories;
}

inline const std::vector<double>& default_threshold_offsets() {
  static const std::vector<double> kOffsets = {-1.5, -1.0, -0.5, 0.0, 0.5,
                                               1.0,  1.5,  2.0,  2.5};
  return kOffsets;
}

struct GrmSpec {
  std::size_t n_students = 2000;
  std::size_t n_courses = 100;
  double ability_mean = 1.13;
  double ability_sigma = 1.41;
  // Course difficulties the generated ones are resampled from.
  std::vector<double> source_difficulties;
  double discrimination = 1.0;
  // Best to worst.
  std::vector<std::string> categories = default_grade_categories();
  // Course thresholds are difficulty + offset; strictly increasing, one fewer
  // than the categories.
  std::vector<double> threshold_offsets = default_threshold_offsets();
  int base = 5;
  int step = 1;
};

struct DatasetSpec {
  Family family = Family::kUniform;
  std::size_t n_students = 400;
  std::size_t n_topics = 40;
  std::uint64_t seed = 0;
  GroundTruthSpec ground_truth;
  DistributionParams distribution;
  GrmSpec grm;
};

// Pareto, Normal or Uniform family; anything else throws InvalidArgument.
RequirementMatrix gen_distribution(const DatasetSpec& spec,
                                   std::uint64_t seed);

class GradeMatrix {
 public:
  GradeMatrix(std::size_t n_students, std::size_t n_courses,
              std::vector<std::string> grades);

  std::size_t n_students() const { return n_students_; }
  std::size_t n_courses() const { return n_courses_; }
  const std::string& at(StudentIndex s, std::size_t course) const {
    return grades_[s * n_courses_ + course];
  }

 private:
  std::size_t n_students_;
  std::size_t n_courses_;
  std::vector<std::string> grades_;
};

struct GrmSample {
  GradeMatrix grades;
  std::vector<double> abilities;
  std::vector<double> difficulties;
};

// Throws InvalidConfig for a missing difficulty source or inconsistent
// category structure.
GrmSample gen_grm(const GrmSpec& spec, std::uint64_t seed);

void validate_grm(const GrmSpec& spec);

// P(grade at or above the category just above each threshold), i.e.
// logistic(a * (theta - b_g)) for ascending thresholds b_g. Index 0 is the
// lowest boundary.
std::vector<double> grm_cumulative(double theta,
                                   std::span<const double> thresholds,
                                   double discrimination);

// Draws a grade rank (0 = best category) for one student-course pair.
std::size_t sample_grade_rank(double theta, std::span<const double> thresholds,
                              double discrimination, Rng& rng);

// `count` draws from a Gaussian kernel density over `source` with
// Silverman's rule-of-thumb bandwidth.
std::vector<double> kde_resample(std::span<const double> source,
                                 std::size_t count, Rng& rng);

// req = base + step * rank(grade), rank 0 being the first category. Throws
// InvalidArgument on an unknown grade symbol.
RequirementMatrix grades_to_repetitions(const GradeMatrix& grades,
                                        std::span<const std::string> categories,
                                        int base, int step);

struct Dataset {
  RequirementMatrix matrix;
  std::optional<std::vector<GroupIndex>> labels;
};

// Dispatch on spec.family using spec.seed. For GroundTruth the student count
// is n_groups * group_size and n_topics comes from the ground-truth block.
Dataset generate(const DatasetSpec& spec);

}  // namespace cohort

#endif  // COHORT_DATAGEN_H_
