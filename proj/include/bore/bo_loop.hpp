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

#ifndef BORE_BO_LOOP_HPP
#define BORE_BO_LOOP_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bore/benchmarks.hpp"
#include "bore/classifier.hpp"
#include "bore/forest.hpp"
#include "bore/maximizers.hpp"
#include "bore/mlp.hpp"
#include "bore/space.hpp"

namespace bore {

/// A noisy blackbox: y = f(x) + eps with eps ~ N(0, noise_std^2).
struct Problem {
  std::string name;
  SearchSpace space;
  std::function<double(const Point&)> f;
  double noise_std = 0.0;
  std::optional<double> known_minimum;

  static Problem from_benchmark(const Benchmark& bench);
  double evaluate(const Point& x, Rng& noise) const;
};

enum class Phase { init, bo };

struct TraceRecord {
  std::size_t iteration = 0;
  Phase phase = Phase::init;
  Point x;
  double y = 0.0;
  double incumbent = 0.0;
  std::optional<double> regret;
  double elapsed_s = 0.0;
};

struct RunTrace {
  std::string method;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;
};

double immediate_regret(double incumbent, double known_minimum);

enum class ClassifierKind { mlp, forest };

struct BoreSettings {
  double gamma = 1.0 / 3.0;
  std::size_t n_init = 4;
  std::size_t n_iterations = 30;
  ClassifierKind classifier = ClassifierKind::mlp;
  MlpConfig mlp;
  ForestConfig forest;
  CalibrationMethod calibration = CalibrationMethod::none;
  SuggestOptions maximizer;
};

struct TpeSettings {
  double gamma = 1.0 / 3.0;
  std::size_t n_init = 4;
  std::size_t n_iterations = 30;
  std::size_t candidates = 24;
  double prior_weight = 1.0;
};

/// Observations plus the classifier, which is kept warm between steps.
struct BoreState {
  ObservationSet obs;
  std::unique_ptr<ProbabilisticClassifier> classifier;
};

std::unique_ptr<ProbabilisticClassifier> make_classifier(const SearchSpace& space,
                                                         const BoreSettings& settings,
                                                         std::uint64_t seed);

/// Labels the data, refits the classifier and maximizes it. Does not evaluate
/// the objective.
Point bore_step(BoreState& state, const SearchSpace& space, double gamma,
                const SuggestOptions& maximizer);

RunTrace run_bore(const Problem& problem, const BoreSettings& settings, std::uint64_t seed);
std::vector<RunTrace> run_bore(const Problem& problem, const BoreSettings& settings,
                               const std::vector<std::uint64_t>& seeds);

RunTrace run_random_search(const Problem& problem, std::size_t n_evals, std::uint64_t seed);
std::vector<RunTrace> run_random_search(const Problem& problem, std::size_t n_evals,
                                        const std::vector<std::uint64_t>& seeds);

RunTrace run_tpe(const Problem& problem, const TpeSettings& settings, std::uint64_t seed);
std::vector<RunTrace> run_tpe(const Problem& problem, const TpeSettings& settings,
                              const std::vector<std::uint64_t>& seeds);

}  // namespace bore

#endif  // BORE_BO_LOOP_HPP
