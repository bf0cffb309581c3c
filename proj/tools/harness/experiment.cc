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

#include "harness/experiment.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>
#include <tuple>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "cohort/errors.h"
#include "cohort/io.h"

namespace cohort::tools {
namespace {

std::string fixed(double value, int digits) {
  return fmt::format("{:.{}f}", value, digits);
}

std::string fixed(const std::optional<double>& value, int digits) {
  return value ? fixed(*value, digits) : std::string();
}

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "random") return Algorithm::kRandom;
  if (name == "kmeans") return Algorithm::kKmeans;
  if (name == "cohpart") return Algorithm::kCohpart;
  if (name == "cohpart_s") return Algorithm::kCohpartSampled;
  throw InvalidArgument(fmt::format(
      "unknown algorithm '{}' (random, kmeans, cohpart, cohpart_s)", name));
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRandom:
      return "random";
    case Algorithm::kKmeans:
      return "kmeans";
    case Algorithm::kCohpart:
      return "cohpart";
    case Algorithm::kCohpartSampled:
      return "cohpart_s";
  }
  return "?";
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> kAll = {
      Algorithm::kRandom, Algorithm::kKmeans, Algorithm::kCohpart,
      Algorithm::kCohpartSampled};
  return kAll;
}

PartitionResult run_algorithm(Algorithm algorithm,
                              const RequirementMatrix& matrix,
                              const PartitionConfig& cfg, BenefitFunction bf) {
  switch (algorithm) {
    case Algorithm::kRandom:
      return random_partition(matrix, cfg, bf);
    case Algorithm::kKmeans:
      return kmeans_partition(matrix, cfg, bf);
    case Algorithm::kCohpart:
      return cohpart(matrix, cfg, bf);
    case Algorithm::kCohpartSampled:
      return cohpart_sampled(matrix, cfg, bf);
  }
  throw InvalidArgument("unknown algorithm");
}

std::string DeadlineSpec::label() const {
  return average ? "avg" : std::to_string(value);
}

DeadlineSpec parse_deadline(std::string_view text) {
  if (text == "avg") return {true, 0};
  int value = 0;
  std::size_t used = 0;
  try {
    value = std::stoi(std::string(text), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || value < 0) {
    throw InvalidArgument(
        fmt::format("bad deadline '{}': expected a non-negative integer or "
                    "'avg'",
                    text));
  }
  return {false, value};
}

int resolve_deadline(const DeadlineSpec& spec,
                     const RequirementMatrix& matrix) {
  if (!spec.average) return spec.value;
  double total = 0.0;
  for (StudentIndex s = 0; s < matrix.n_students(); ++s) {
    total += static_cast<double>(matrix.row_sum(s));
  }
  return static_cast<int>(
      std::lround(total / static_cast<double>(matrix.n_students())));
}

void validate_plan(const ExperimentPlan& plan) {
  if (plan.algorithms.empty()) throw InvalidConfig("plan has no algorithms");
  if (plan.k_values.empty()) throw InvalidConfig("plan has an empty K sweep");
  if (plan.d_values.empty()) throw InvalidConfig("plan has an empty d sweep");
  if (plan.trials < 1) throw InvalidConfig("trials must be at least 1");
  if (plan.restarts < 1) throw InvalidConfig("restarts must be at least 1");
  if (plan.sample_c < 1) throw InvalidConfig("sample_c must be at least 1");
  if (plan.max_iters < 1) throw InvalidConfig("max_iters must be at least 1");
  for (std::size_t k : plan.k_values) {
    if (k == 0) throw InvalidConfig("K values must be positive");
  }
  if (plan.dataset.has_value() == !plan.matrix_path.empty()) {
    throw InvalidConfig("plan needs exactly one of a dataset spec or a matrix");
  }
  if (!plan.labels_path.empty() && plan.matrix_path.empty()) {
    throw InvalidConfig("labels are only read alongside a matrix file");
  }
}

std::string dataset_name(const ExperimentPlan& plan) {
  if (!plan.name.empty()) return plan.name;
  if (plan.dataset) return std::string(to_string(plan.dataset->family));
  return std::filesystem::path(plan.matrix_path).stem().string();
}

Dataset materialize(const ExperimentPlan& plan, int trial) {
  if (plan.dataset) {
    DatasetSpec spec = *plan.dataset;
    spec.seed = plan.seed + static_cast<std::uint64_t>(trial);
    return generate(spec);
  }
  Dataset out{read_matrix_csv(plan.matrix_path), std::nullopt};
  if (!plan.labels_path.empty()) {
    out.labels = read_assignment_csv(plan.labels_path, out.matrix);
  }
  return out;
}

std::vector<RunRow> run_plan(const ExperimentPlan& plan,
                             const RunSettings& settings) {
  validate_plan(plan);
  const std::string name = dataset_name(plan);
  std::vector<RunRow> rows;
  std::optional<Dataset> fixed_data;
  for (int trial = 0; trial < plan.trials; ++trial) {
    const std::uint64_t seed = plan.seed + static_cast<std::uint64_t>(trial);
    if (plan.dataset || !fixed_data) fixed_data = materialize(plan, trial);
    const Dataset& data = *fixed_data;
    for (std::size_t di = 0; di < plan.d_values.size(); ++di) {
      const int d = resolve_deadline(plan.d_values[di], data.matrix);
      for (std::size_t k : plan.k_values) {
        for (Algorithm algo : plan.algorithms) {
          RunRow row;
          row.dataset = name;
          row.algorithm = algo;
          row.k = k;
          row.d_index = di;
          row.d = d;
          row.trial = trial;
          row.seed = seed;
          PartitionConfig cfg;
          cfg.k = k;
          cfg.d = d;
          cfg.seed = seed;
          cfg.max_iters = plan.max_iters;
          cfg.sample_multiplier = plan.sample_c;
          cfg.restarts = plan.restarts;
          try {
            const auto result =
                run_algorithm(algo, data.matrix, cfg, plan.benefit);
            row.objective = result.partition.objective;
            row.iterations = result.iterations;
            row.runtime_ms = settings.timing ? result.runtime_ms : 0.0;
            if (data.labels) {
              row.ari = partition_similarity(result.partition.assignment,
                                             *data.labels);
            }
          } catch (const InvalidArgument& e) {
            row.error = e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  auto algo_rank = [&](Algorithm a) {
    return std::find(plan.algorithms.begin(), plan.algorithms.end(), a) -
           plan.algorithms.begin();
  };
  auto k_rank = [&](std::size_t k) {
    return std::find(plan.k_values.begin(), plan.k_values.end(), k) -
           plan.k_values.begin();
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const RunRow& a, const RunRow& b) {
                     return std::tuple(k_rank(a.k), a.d_index,
                                       algo_rank(a.algorithm), a.trial) <
                            std::tuple(k_rank(b.k), b.d_index,
                                       algo_rank(b.algorithm), b.trial);
                   });
  return rows;
}

std::optional<double> ci95_half_width(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return std::nullopt;
  const double mean = mean_of(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  boost::math::students_t dist(static_cast<double>(n - 1));
  const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
  return t * sd / std::sqrt(static_cast<double>(n));
}

std::vector<AggregateRow> aggregate(const ExperimentPlan& plan,
                                    std::span<const RunRow> rows) {
  struct Cell {
    std::vector<double> objective, iterations, runtime, ari;
  };
  using Key = std::tuple<std::string, std::size_t, std::size_t, std::size_t>;
  std::map<Key, Cell> cells;
  std::vector<Key> order;
  std::map<Key, AggregateRow> heads;
  for (const auto& row : rows) {
    if (!row.objective) continue;
    const auto algo_index = static_cast<std::size_t>(row.algorithm);
    Key key{row.dataset, row.k, row.d_index, algo_index};
    auto [it, inserted] = cells.try_emplace(key);
    if (inserted) {
      order.push_back(key);
      AggregateRow head;
      head.dataset = row.dataset;
      head.algorithm = row.algorithm;
      head.k = row.k;
      head.d_label = row.d_index < plan.d_values.size()
                         ? plan.d_values[row.d_index].label()
                         : std::to_string(row.d);
      heads.emplace(key, head);
    }
    it->second.objective.push_back(*row.objective);
    it->second.iterations.push_back(row.iterations);
    it->second.runtime.push_back(row.runtime_ms);
    if (row.ari) it->second.ari.push_back(*row.ari);
  }
  std::vector<AggregateRow> out;
  for (const auto& key : order) {
    const Cell& cell = cells.at(key);
    AggregateRow agg = heads.at(key);
    agg.trials = cell.objective.size();
    agg.objective_mean = mean_of(cell.objective);
    agg.objective_ci95 = ci95_half_width(cell.objective);
    agg.iterations_mean = mean_of(cell.iterations);
    agg.runtime_ms_mean = mean_of(cell.runtime);
    if (!cell.ari.empty()) {
      agg.ari_mean = mean_of(cell.ari);
      agg.ari_ci95 = ci95_half_width(cell.ari);
    }
    out.push_back(std::move(agg));
  }
  return out;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_raw_csv(std::ostream& out, std::span<const RunRow> rows,
                   const RunSettings& settings) {
  out << kRawHeader << '\n';
  for (const auto& row : rows) {
    out << csv_field(row.dataset) << ',' << to_string(row.algorithm) << ','
        << row.k << ',' << row.d << ',' << row.seed << ',';
    if (row.objective) {
      out << fixed(*row.objective, 6) << ',' << row.iterations << ','
          << fixed(settings.timing ? row.runtime_ms : 0.0, 3) << ','
          << fixed(row.ari, 6);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
}

void write_aggregate_csv(std::ostream& out,
                         std::span<const AggregateRow> rows) {
  out << kAggregateHeader << '\n';
  for (const auto& row : rows) {
    out << csv_field(row.dataset) << ',' << to_string(row.algorithm) << ','
        << row.k << ',' << row.d_label << ',' << row.trials << ','
        << fixed(row.objective_mean, 6) << ','
        << fixed(row.objective_ci95, 6) << ','
        << fixed(row.iterations_mean, 3) << ','
        << fixed(row.runtime_ms_mean, 3) << ',' << fixed(row.ari_mean, 6)
        << ',' << fixed(row.ari_ci95, 6) << '\n';
  }
}

void write_errors_csv(std::ostream& out, std::span<const RunRow> rows) {
  out << kErrorsHeader << '\n';
  for (const auto& row : rows) {
    if (row.objective) continue;
    out << csv_field(row.dataset) << ',' << to_string(row.algorithm) << ','
        << row.k << ',' << row.d << ',' << row.seed << ','
        << csv_field(row.error) << '\n';
  }
}

}  // namespace cohort::tools
