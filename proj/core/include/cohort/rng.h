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

#ifndef COHORT_RNG_H_
#define COHORT_RNG_H_

// Portable seeded random numbers.
//
// SplitMix64 with hand-written distributions: a (seed, stream) pair yields the
// same numbers on every platform and standard library.
//
// Rng::stream(seed, a, b, c) folds the key words into the seed through the
// SplitMix64 finalizer. Generators draw from one stream per matrix cell or
// per student row.

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace cohort {

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                    std::uint64_t c = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  std::uint64_t next();
  result_type operator()() { return next(); }

  // Uniform on [0, 1).
  double uniform01();
  // Uniform on (0, 1].
  double uniform_open01() { return 1.0 - uniform01(); }
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  double normal(double mean, double stddev);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct values from [0, n) in selection order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t k);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace cohort

#endif  // COHORT_RNG_H_
