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

#ifndef BORE_MAXIMIZERS_HPP
#define BORE_MAXIMIZERS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "bore/classifier.hpp"
#include "bore/space.hpp"

namespace bore {

using Objective = std::function<double(const Point&)>;

enum class MaximizerMethod { automatic, random_search, differential_evolution, gradient_multistart };

MaximizerMethod parse_maximizer(const std::string& name);
std::string to_string(MaximizerMethod method);

struct DeParams {
  std::size_t population_size = 20;
  double mutation = 0.5;
  double crossover = 0.9;

  void validate() const;
};

struct MaximizerBudget {
  MaximizerMethod method = MaximizerMethod::automatic;
  /// Objective evaluations for random search and differential evolution.
  std::size_t max_evals = 500;
  std::uint64_t seed = 0;
};

/// Budgets used when `suggest` picks the maximizer itself.
struct SuggestOptions {
  MaximizerMethod method = MaximizerMethod::automatic;
  std::size_t random_search_evals = 500;
  std::size_t de_evals = 2000;
  std::size_t restarts = 3;
  DeParams de;
  std::uint64_t seed = 0;
};

struct Maximum {
  Point x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

Maximum maximize_random_search(const Objective& objective, const SearchSpace& space,
                               const MaximizerBudget& budget);

/// rand/1/bin differential evolution with clipping; continuous spaces only.
Maximum maximize_de(const Objective& objective, const SearchSpace& space,
                    const MaximizerBudget& budget, const DeParams& params = {});

/// Per-restart record kept for diagnostics and tests.
struct AscentPath {
  Point start;
  double start_value = 0.0;
  Point end;
  double end_value = 0.0;
  std::size_t iterations = 0;
};

struct MultistartResult {
  Maximum best;
  std::vector<AscentPath> paths;
};

/// Projected gradient ascent with backtracking on the classifier output from
/// `restarts` uniform starting points.
MultistartResult maximize_gradient_multistart(const ProbabilisticClassifier& classifier,
                                              const SearchSpace& space, std::size_t restarts,
                                              std::uint64_t seed);

/// Picks the maximizer (gradient ascent for differentiable classifiers on
/// continuous spaces, otherwise DE on continuous and random search on
/// discrete or mixed spaces) and returns an in-bounds point.
Point suggest(const ProbabilisticClassifier& classifier, const SearchSpace& space,
              const SuggestOptions& options);

}  // namespace bore

#endif  // BORE_MAXIMIZERS_HPP
