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

#include "harness/spec_file.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <string_view>
#include <vector>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "cohort/errors.h"
#include "cohort/io.h"

namespace cohort::tools {
namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

const std::set<std::string, std::less<>> kDatasetSections = {
    "dataset", "groundtruth", "distribution", "grm"};

const std::map<std::string, std::set<std::string, std::less<>>, std::less<>>
    kKeys = {
        {"dataset", {"family", "seed", "n_students", "n_topics"}},
        {"groundtruth",
         {"n_groups", "group_size", "selected_per_group", "n_topics", "d",
          "filler_mean", "filler_sigma"}},
        {"distribution",
         {"pareto_alpha", "pareto_scale", "normal_mean", "normal_sigma",
          "uniform_lo", "uniform_hi"}},
        {"grm",
         {"difficulties", "ability_mean", "ability_sigma", "discrimination",
          "categories", "threshold_offsets", "base", "step"}},
        {"plan",
         {"name", "dataset", "matrix", "labels", "algorithms", "k", "d",
          "trials", "seed", "restarts", "sample_c", "max_iters", "benefit",
          "base", "step", "out", "aggregate_out", "errors_out"}},
};

pt::ptree parse_ini(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ptree_error& e) {
    throw InvalidConfig(e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto known = kKeys.find(section);
    if (known == kKeys.end() || !body.data().empty()) {
      throw InvalidConfig(fmt::format("unknown section [{}]", section));
    }
    for (const auto& [key, value] : body) {
      if (!known->second.contains(key)) {
        throw InvalidConfig(
            fmt::format("unknown key '{}' in [{}]", key, section));
      }
    }
  }
  return tree;
}

template <typename T>
void read_into(const pt::ptree& tree, const std::string& key, T& target) {
  const auto value = tree.get_optional<std::string>(key);
  if (!value) return;
  const auto parsed = tree.get_optional<T>(key);
  if (!parsed || boost::trim_copy(*value).empty()) {
    throw InvalidConfig(fmt::format("bad value '{}' for {}", *value, key));
  }
  if constexpr (std::is_unsigned_v<T>) {
    if (boost::trim_copy(*value).front() == '-') {
      throw InvalidConfig(fmt::format("{} must be non-negative", key));
    }
  }
  target = *parsed;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  boost::split(parts, text, boost::is_any_of(","));
  for (auto& p : parts) boost::trim(p);
  parts.erase(std::remove(parts.begin(), parts.end(), std::string()),
              parts.end());
  return parts;
}

std::string resolve(const fs::path& base_dir, const std::string& path) {
  const fs::path p(path);
  return (p.is_absolute() ? p : base_dir / p).string();
}

DatasetSpec dataset_from_tree(const pt::ptree& tree, const fs::path& base) {
  DatasetSpec spec;
  const auto family = tree.get_optional<std::string>("dataset.family");
  if (!family) throw InvalidConfig("dataset spec needs [dataset] family");
  try {
    spec.family = parse_family(boost::trim_copy(*family));
  } catch (const InvalidArgument& e) {
    throw InvalidConfig(e.what());
  }
  read_into(tree, "dataset.seed", spec.seed);
  read_into(tree, "dataset.n_students", spec.n_students);
  read_into(tree, "dataset.n_topics", spec.n_topics);

  auto& gt = spec.ground_truth;
  read_into(tree, "groundtruth.n_groups", gt.n_groups);
  read_into(tree, "groundtruth.group_size", gt.group_size);
  read_into(tree, "groundtruth.selected_per_group", gt.selected_per_group);
  read_into(tree, "groundtruth.n_topics", gt.n_topics);
  read_into(tree, "groundtruth.d", gt.d);
  read_into(tree, "groundtruth.filler_mean", gt.filler_mean);
  read_into(tree, "groundtruth.filler_sigma", gt.filler_sigma);

  auto& dist = spec.distribution;
  read_into(tree, "distribution.pareto_alpha", dist.pareto_alpha);
  read_into(tree, "distribution.pareto_scale", dist.pareto_scale);
  read_into(tree, "distribution.normal_mean", dist.normal_mean);
  read_into(tree, "distribution.normal_sigma", dist.normal_sigma);
  read_into(tree, "distribution.uniform_lo", dist.uniform_lo);
  read_into(tree, "distribution.uniform_hi", dist.uniform_hi);

  auto& grm = spec.grm;
  if (auto path = tree.get_optional<std::string>("grm.difficulties")) {
    grm.source_difficulties =
        read_value_column_csv(resolve(base, boost::trim_copy(*path)));
  }
  read_into(tree, "grm.ability_mean", grm.ability_mean);
  read_into(tree, "grm.ability_sigma", grm.ability_sigma);
  read_into(tree, "grm.discrimination", grm.discrimination);
  read_into(tree, "grm.base", grm.base);
  read_into(tree, "grm.step", grm.step);
  if (auto cats = tree.get_optional<std::string>("grm.categories")) {
    grm.categories = split_list(*cats);
  }
  if (auto offs = tree.get_optional<std::string>("grm.threshold_offsets")) {
    grm.threshold_offsets.clear();
    for (const auto& item : split_list(*offs)) {
      try {
        grm.threshold_offsets.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw InvalidConfig(fmt::format("bad threshold offset '{}'", item));
      }
    }
  }
  grm.n_students = spec.n_students;
  grm.n_courses = spec.n_topics;
  if (spec.family == Family::kGrm) validate_grm(grm);
  return spec;
}

std::ifstream open(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument(fmt::format("cannot open {}", path.string()));
  return in;
}

}  // namespace

DatasetSpec parse_dataset_spec(std::istream& in, const fs::path& base_dir) {
  const pt::ptree tree = parse_ini(in);
  if (tree.count("plan") > 0) {
    throw InvalidConfig("dataset spec may not contain a [plan] section");
  }
  return dataset_from_tree(tree, base_dir);
}

DatasetSpec load_dataset_spec(const fs::path& path) {
  auto in = open(path);
  return parse_dataset_spec(in, path.parent_path());
}

ExperimentPlan parse_plan(std::istream& in, const fs::path& base_dir) {
  const pt::ptree tree = parse_ini(in);
  ExperimentPlan plan;
  const bool inline_dataset = tree.count("dataset") > 0;
  if (auto path = tree.get_optional<std::string>("plan.dataset")) {
    if (inline_dataset) {
      throw InvalidConfig("plan has both a dataset path and a [dataset]");
    }
    plan.dataset = load_dataset_spec(resolve(base_dir, *path));
  } else if (inline_dataset) {
    plan.dataset = dataset_from_tree(tree, base_dir);
  }
  if (auto path = tree.get_optional<std::string>("plan.matrix")) {
    plan.matrix_path = resolve(base_dir, boost::trim_copy(*path));
  }
  if (auto path = tree.get_optional<std::string>("plan.labels")) {
    plan.labels_path = resolve(base_dir, boost::trim_copy(*path));
  }
  read_into(tree, "plan.name", plan.name);
  if (auto algos = tree.get_optional<std::string>("plan.algorithms")) {
    plan.algorithms.clear();
    for (const auto& a : split_list(*algos)) {
      plan.algorithms.push_back(parse_algorithm(a));
    }
  }
  if (auto ks = tree.get_optional<std::string>("plan.k")) {
    for (const auto& item : split_list(*ks)) {
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != item.size() || value < 1) {
        throw InvalidConfig(fmt::format("bad K value '{}'", item));
      }
      plan.k_values.push_back(static_cast<std::size_t>(value));
    }
  }
  if (auto ds = tree.get_optional<std::string>("plan.d")) {
    for (const auto& item : split_list(*ds)) {
      plan.d_values.push_back(parse_deadline(item));
    }
  }
  read_into(tree, "plan.trials", plan.trials);
  read_into(tree, "plan.seed", plan.seed);
  read_into(tree, "plan.restarts", plan.restarts);
  read_into(tree, "plan.sample_c", plan.sample_c);
  read_into(tree, "plan.max_iters", plan.max_iters);
  if (auto bf = tree.get_optional<std::string>("plan.benefit")) {
    plan.benefit = parse_benefit_function(boost::trim_copy(*bf));
  }
  std::optional<int> base, step;
  if (tree.get_optional<std::string>("plan.base")) {
    base.emplace();
    read_into(tree, "plan.base", *base);
  }
  if (tree.get_optional<std::string>("plan.step")) {
    step.emplace();
    read_into(tree, "plan.step", *step);
  }
  if (base || step) {
    if (!plan.dataset) {
      throw InvalidConfig("base/step apply only to a generated GRM dataset");
    }
    override_grade_mapping(*plan.dataset, base, step);
  }
  if (auto out = tree.get_optional<std::string>("plan.out")) {
    plan.out_path = resolve(base_dir, boost::trim_copy(*out));
  }
  if (auto out = tree.get_optional<std::string>("plan.aggregate_out")) {
    plan.aggregate_path = resolve(base_dir, boost::trim_copy(*out));
  }
  if (auto out = tree.get_optional<std::string>("plan.errors_out")) {
    plan.errors_path = resolve(base_dir, boost::trim_copy(*out));
  }
  return plan;
}

ExperimentPlan load_plan(const fs::path& path) {
  auto in = open(path);
  return parse_plan(in, path.parent_path());
}

void override_grade_mapping(DatasetSpec& spec, std::optional<int> base,
                            std::optional<int> step) {
  if (!base && !step) return;
  if (spec.family != Family::kGrm) {
    throw InvalidConfig("base/step apply only to the grm family");
  }
  if (base) spec.grm.base = *base;
  if (step) spec.grm.step = *step;
  validate_grm(spec.grm);
}

}  // namespace cohort::tools
