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

#include "cohort/datagen.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>

#include "cohort/errors.h"

namespace cohort {
namespace {

enum StreamTag : std::uint64_t {
  kSelectTopics = 101,
  kComposition,
  kFiller,
  kCell,
  kAbility,
  kDifficulty,
  kGrade,
};

int clamp_requirement(double value) {
  if (!(value >= 1.0)) return 1;  // also catches NaN
  if (value >= kMaxRequirement) return kMaxRequirement;
  return static_cast<int>(value);
}

// Uniform over compositions of `total` into `parts` positive integers: pick
// parts - 1 distinct cut points in [1, total - 1].
std::vector<int> random_composition(int total, std::size_t parts, Rng& rng) {
  auto cuts = rng.sample(static_cast<std::size_t>(total - 1), parts - 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<int> out;
  out.reserve(parts);
  int prev = 0;
  for (std::size_t c : cuts) {
    const int cut = static_cast<int>(c) + 1;
    out.push_back(cut - prev);
    prev = cut;
  }
  out.push_back(total - prev);
  return out;
}

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double stddev(std::span<const double> xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1))
                       : 0.0;
}

// Linear-interpolated sample quantile of sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

PlantedDataset gen_ground_truth(const GroundTruthSpec& spec,
                                std::uint64_t seed) {
  if (spec.n_groups == 0 || spec.group_size == 0) {
    throw InvalidArgument("ground truth needs at least one group and student");
  }
  if (spec.selected_per_group == 0 ||
      spec.selected_per_group > spec.n_topics) {
    throw InvalidArgument("selected_per_group must be in [1, n_topics]");
  }
  if (spec.d < static_cast<int>(spec.selected_per_group)) {
    throw InvalidArgument("deadline smaller than selected_per_group");
  }
  if (spec.filler_sigma < 0) throw InvalidArgument("filler sigma < 0");
  const double filler_mean =
      spec.filler_mean < 0 ? spec.d / 5.0 : spec.filler_mean;

  const std::size_t n = spec.n_groups * spec.group_size;
  const std::size_t m = spec.n_topics;
  PlantedDataset out;
  out.labels.resize(n);
  out.selected_topics.resize(spec.n_groups);
  std::vector<int> cells(n * m, 0);
  for (GroupIndex g = 0; g < spec.n_groups; ++g) {
    Rng pick = Rng::stream(seed, kSelectTopics, g);
    auto topics = pick.sample(m, spec.selected_per_group);
    std::sort(topics.begin(), topics.end());
    out.selected_topics[g] = topics;

    for (std::size_t j = 0; j < spec.group_size; ++j) {
      const StudentIndex s = g * spec.group_size + j;
      out.labels[s] = g;
      Rng compose = Rng::stream(seed, kComposition, s);
      const auto parts =
          random_composition(spec.d, spec.selected_per_group, compose);
      std::vector<bool> selected(m, false);
      for (std::size_t i = 0; i < topics.size(); ++i) {
        cells[s * m + topics[i]] = parts[i];
        selected[topics[i]] = true;
      }
      for (TopicIndex t = 0; t < m; ++t) {
        if (selected[t]) continue;
        Rng fill = Rng::stream(seed, kFiller, s, t);
        cells[s * m + t] = clamp_requirement(
            std::round(fill.normal(filler_mean, spec.filler_sigma)));
      }
    }
  }
  out.matrix = RequirementMatrix(n, m, std::move(cells));
  return out;
}

Family parse_family(std::string_view name) {
  if (name == "groundtruth" || name == "ground_truth") {
    return Family::kGroundTruth;
  }
  if (name == "pareto") return Family::kPareto;
  if (name == "normal") return Family::kNormal;
  if (name == "uniform") return Family::kUniform;
  if (name == "grm") return Family::kGrm;
  throw InvalidArgument("unknown dataset family '" + std::string(name) + "'");
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kGroundTruth:
      return "groundtruth";
    case Family::kPareto:
      return "pareto";
    case Family::kNormal:
      return "normal";
    case Family::kUniform:
      return "uniform";
    case Family::kGrm:
      return "grm";
  }
  return "unknown";
}

RequirementMatrix gen_distribution(const DatasetSpec& spec,
                                   std::uint64_t seed) {
  const auto& p = spec.distribution;
  switch (spec.family) {
    case Family::kPareto:
      if (p.pareto_alpha <= 0 || p.pareto_scale <= 0) {
        throw InvalidConfig("pareto alpha and scale must be positive");
      }
      break;
    case Family::kNormal:
      if (p.normal_sigma < 0) throw InvalidConfig("normal sigma must be >= 0");
      break;
    case Family::kUniform:
      if (p.uniform_lo < 1 || p.uniform_hi < p.uniform_lo) {
        throw InvalidConfig("uniform range must satisfy 1 <= lo <= hi");
      }
      break;
    default:
      throw InvalidArgument("gen_distribution handles pareto, normal and "
                            "uniform only");
  }
  const std::size_t n = spec.n_students;
  const std::size_t m = spec.n_topics;
  std::vector<int> cells(n * m);
  for (StudentIndex s = 0; s < n; ++s) {
    for (TopicIndex t = 0; t < m; ++t) {
      Rng rng = Rng::stream(seed, kCell, s, t);
      double value = 1.0;
      switch (spec.family) {
        case Family::kPareto:
          // Inverse CDF: scale * U^(-1/alpha), U in (0, 1].
          value = std::ceil(p.pareto_scale *
                            std::pow(rng.uniform_open01(), -1.0 / p.pareto_alpha));
          break;
        case Family::kNormal:
          value = std::round(rng.normal(p.normal_mean, p.normal_sigma));
          break;
        default:
          value = static_cast<double>(
              rng.uniform_int(p.uniform_lo, p.uniform_hi));
          break;
      }
      cells[s * m + t] = clamp_requirement(value);
    }
  }
  return RequirementMatrix(n, m, std::move(cells));
}

GradeMatrix::GradeMatrix(std::size_t n_students, std::size_t n_courses,
                         std::vector<std::string> grades)
    : n_students_(n_students),
      n_courses_(n_courses),
      grades_(std::move(grades)) {
  if (grades_.size() != n_students_ * n_courses_) {
    throw InvalidArgument("grade matrix shape mismatch");
  }
}

void validate_grm(const GrmSpec& spec) {
  if (spec.source_difficulties.empty()) {
    throw InvalidConfig("GRM needs at least one source difficulty");
  }
  if (spec.categories.size() < 2 ||
      spec.threshold_offsets.size() + 1 != spec.categories.size()) {
    throw InvalidConfig("GRM needs one threshold fewer than categories");
  }
  if (!std::is_sorted(spec.threshold_offsets.begin(),
                      spec.threshold_offsets.end(), std::less_equal<>())) {
    throw InvalidConfig("GRM thresholds must be strictly increasing");
  }
  if (spec.ability_sigma < 0 || spec.discrimination < 0) {
    throw InvalidConfig("GRM sigma and discrimination must be >= 0");
  }
  if (spec.base < 1 || spec.step < 0) {
    throw InvalidConfig("GRM base must be >= 1 and step >= 0");
  }
}

std::vector<double> grm_cumulative(double theta,
                                   std::span<const double> thresholds,
                                   double discrimination) {
  std::vector<double> p;
  p.reserve(thresholds.size());
  for (double b : thresholds) p.push_back(logistic(discrimination * (theta - b)));
  return p;
}

std::size_t sample_grade_rank(double theta, std::span<const double> thresholds,
                              double discrimination, Rng& rng) {
  const double u = rng.uniform01();
  // Cumulative probabilities fall as thresholds rise, so the passed
  // boundaries form a prefix.
  std::size_t passed = 0;
  for (double b : thresholds) {
    if (u < logistic(discrimination * (theta - b))) {
      ++passed;
    } else {
      break;
    }
  }
  return thresholds.size() - passed;
}

std::vector<double> kde_resample(std::span<const double> source,
                                 std::size_t count, Rng& rng) {
  if (source.empty()) throw InvalidConfig("kernel density over no data");
  std::vector<double> sorted(source.begin(), source.end());
  std::sort(sorted.begin(), sorted.end());
  const double sd = stddev(sorted);
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  double spread = sd;
  if (iqr > 0) spread = std::min(sd, iqr / 1.34);
  const double bandwidth =
      0.9 * spread * std::pow(static_cast<double>(sorted.size()), -0.2);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double centre = source[static_cast<std::size_t>(rng.below(source.size()))];
    out.push_back(rng.normal(centre, bandwidth));
  }
  return out;
}

GrmSample gen_grm(const GrmSpec& spec, std::uint64_t seed) {
  validate_grm(spec);
  GrmSample out{GradeMatrix(0, 0, {}), {}, {}};
  Rng diff_rng = Rng::stream(seed, kDifficulty);
  out.difficulties =
      kde_resample(spec.source_difficulties, spec.n_courses, diff_rng);
  out.abilities.resize(spec.n_students);
  for (StudentIndex s = 0; s < spec.n_students; ++s) {
    Rng rng = Rng::stream(seed, kAbility, s);
    out.abilities[s] = rng.normal(spec.ability_mean, spec.ability_sigma);
  }
  std::vector<std::vector<double>> thresholds(spec.n_courses);
  for (std::size_t c = 0; c < spec.n_courses; ++c) {
    for (double off : spec.threshold_offsets) {
      thresholds[c].push_back(out.difficulties[c] + off);
    }
  }
  std::vector<std::string> grades(spec.n_students * spec.n_courses);
  for (StudentIndex s = 0; s < spec.n_students; ++s) {
    for (std::size_t c = 0; c < spec.n_courses; ++c) {
      Rng rng = Rng::stream(seed, kGrade, s, c);
      const std::size_t rank = sample_grade_rank(
          out.abilities[s], thresholds[c], spec.discrimination, rng);
      grades[s * spec.n_courses + c] = spec.categories[rank];
    }
  }
  out.grades = GradeMatrix(spec.n_students, spec.n_courses, std::move(grades));
  return out;
}

RequirementMatrix grades_to_repetitions(const GradeMatrix& grades,
                                        std::span<const std::string> categories,
                                        int base, int step) {
  if (base < 1 || step < 0) {
    throw InvalidArgument("base must be >= 1 and step >= 0");
  }
  std::unordered_map<std::string, int> rank;
  for (std::size_t i = 0; i < categories.size(); ++i) {
    rank.emplace(categories[i], static_cast<int>(i));
  }
  std::vector<int> cells;
  cells.reserve(grades.n_students() * grades.n_courses());
  for (StudentIndex s = 0; s < grades.n_students(); ++s) {
    for (std::size_t c = 0; c < grades.n_courses(); ++c) {
      auto it = rank.find(grades.at(s, c));
      if (it == rank.end()) {
        throw InvalidArgument("unknown grade '" + grades.at(s, c) + "'");
      }
      cells.push_back(base + step * it->second);
    }
  }
  return RequirementMatrix(grades.n_students(), grades.n_courses(),
                           std::move(cells));
}

Dataset generate(const DatasetSpec& spec) {
  switch (spec.family) {
    case Family::kGroundTruth: {
      PlantedDataset planted = gen_ground_truth(spec.ground_truth, spec.seed);
      return {std::move(planted.matrix), std::move(planted.labels)};
    }
    case Family::kGrm: {
      GrmSpec grm = spec.grm;
      grm.n_students = spec.n_students;
      grm.n_courses = spec.n_topics;
      GrmSample sample = gen_grm(grm, spec.seed);
      return {grades_to_repetitions(sample.grades, grm.categories, grm.base,
                                    grm.step),
              std::nullopt};
    }
    default:
      return {gen_distribution(spec, spec.seed), std::nullopt};
  }
}

}  // namespace cohort
