// Copyright 2026 The bore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BORE_BENCHMARKS_HPP
#define BORE_BENCHMARKS_HPP

#include <functional>
#include <string>
#include <vector>

#include "bore/common.hpp"
#include "bore/space.hpp"

namespace bore {

/// (6x - 2)^2 sin(12x - 4) on [0, 1].
double forrester(double x);

/// sin(3x) + x^2 - 0.7x; the bounds default to [-1, 2].
double sinusoid_quadratic(double x, double lo = -1.0, double hi = 2.0);

struct GridMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Dense-grid search over [lo, hi] followed by golden-section refinement
/// inside the bracketing grid cells.
GridMinimum grid_minimum(const std::function<double(double)>& f, double lo, double hi,
                         int grid_points = 10001);

struct Benchmark {
  std::string name;
  SearchSpace space;
  /// Noise-free objective.
  std::function<double(const Point&)> f;
  double noise_std = 0.0;
  GridMinimum minimum;
  /// Quantile used by the runner when the config leaves gamma unset.
  double default_gamma = 1.0 / 3.0;
};

Benchmark make_benchmark(const std::string& name);
std::vector<std::string> benchmark_names();

/// f(x) plus a draw from N(0, noise_std^2) taken from `rng`.
double noisy_eval(const Benchmark& bench, const Point& x, Rng& rng);

}  // namespace bore

#endif  // BORE_BENCHMARKS_HPP
