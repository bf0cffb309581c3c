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

#include <numeric>
#include <vector>

#include "benchmark/benchmark.h"
#include "cohort/datagen.h"
#include "cohort/partitioner.h"
#include "cohort/scheduler.h"

namespace cohort {
namespace {

RequirementMatrix uniform_matrix(std::size_t n, std::size_t m) {
  DatasetSpec spec;
  spec.family = Family::kUniform;
  spec.n_students = n;
  spec.n_topics = m;
  spec.seed = 1;
  return generate(spec).matrix;
}

void BM_ScheduleGroup(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const auto matrix = uniform_matrix(n, 100);
  std::vector<StudentIndex> group(n);
  std::iota(group.begin(), group.end(), StudentIndex{0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(schedule_group(matrix, group, d).benefit);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n) * 100);
}
BENCHMARK(BM_ScheduleGroup)
    ->Args({10, 100})
    ->Args({100, 100})
    ->Args({1000, 100})
    ->Args({100, 1000});

void BM_Cohpart(benchmark::State& state) {
  const auto matrix = uniform_matrix(static_cast<std::size_t>(state.range(0)),
                                     100);
  PartitionConfig cfg;
  cfg.k = 10;
  cfg.d = 500;
  cfg.seed = 1;
  for (auto _ : state) {
    auto r = cohpart(matrix, cfg);
    state.counters["iterations"] = r.iterations;
    benchmark::DoNotOptimize(r.partition.objective);
  }
}
BENCHMARK(BM_Cohpart)->Arg(500)->Arg(1000)->Arg(2000)->Unit(
    benchmark::kMillisecond);

void BM_CohpartSampled(benchmark::State& state) {
  const auto matrix = uniform_matrix(static_cast<std::size_t>(state.range(0)),
                                     100);
  PartitionConfig cfg;
  cfg.k = 10;
  cfg.d = 500;
  cfg.seed = 1;
  cfg.sample_multiplier = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cohpart_sampled(matrix, cfg).partition.objective);
  }
}
BENCHMARK(BM_CohpartSampled)->Arg(500)->Arg(1000)->Arg(2000)->Unit(
    benchmark::kMillisecond);

void BM_Kmeans(benchmark::State& state) {
  const auto matrix = uniform_matrix(static_cast<std::size_t>(state.range(0)),
                                     100);
  PartitionConfig cfg;
  cfg.k = 10;
  cfg.d = 500;
  cfg.seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kmeans_partition(matrix, cfg).partition.objective);
  }
}
BENCHMARK(BM_Kmeans)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace cohort

BENCHMARK_MAIN();
