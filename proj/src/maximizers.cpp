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

#include "bore/maximizers.hpp"

#include <algorithm>
#include <cmath>

namespace bore {

MaximizerMethod parse_maximizer(const std::string& name) {
  if (name == "auto") return MaximizerMethod::automatic;
  if (name == "random_search") return MaximizerMethod::random_search;
  if (name == "differential_evolution") return MaximizerMethod::differential_evolution;
  if (name == "gradient_multistart") return MaximizerMethod::gradient_multistart;
  throw DomainError("unknown maximizer '" + name + "'");
}

std::string to_string(MaximizerMethod method) {
  switch (method) {
    case MaximizerMethod::automatic:
      return "auto";
    case MaximizerMethod::random_search:
      return "random_search";
    case MaximizerMethod::differential_evolution:
      return "differential_evolution";
    case MaximizerMethod::gradient_multistart:
      return "gradient_multistart";
  }
  return "auto";
}

void DeParams::validate() const {
  if (population_size < 4) throw DomainError("DE population must have at least 4 members");
  if (!(mutation > 0.0 && mutation <= 2.0)) throw DomainError("DE mutation factor must be in (0, 2]");
  if (!(crossover >= 0.0 && crossover <= 1.0)) throw DomainError("DE crossover rate must be in [0, 1]");
}

Maximum maximize_random_search(const Objective& objective, const SearchSpace& space,
                               const MaximizerBudget& budget) {
  if (budget.max_evals < 1) throw DomainError("random search needs at least one evaluation");
  Rng rng = make_rng(budget.seed, 0x7273);
  Maximum best;
  for (std::size_t i = 0; i < budget.max_evals; ++i) {
    Point x = space.sample(rng);
    const double v = objective(x);
    ++best.evaluations;
    // Strict comparison: the first sampled point wins ties.
    if (i == 0 || v > best.value) {
      best.value = v;
      best.x = std::move(x);
    }
  }
  return best;
}

Maximum maximize_de(const Objective& objective, const SearchSpace& space,
                    const MaximizerBudget& budget, const DeParams& params) {
  params.validate();
  if (!space.all_continuous()) {
    throw DomainError("differential evolution requires a continuous space");
  }
  const std::size_t pop = params.population_size;
  if (budget.max_evals < pop) {
    throw DomainError("DE budget must cover the initial population");
  }
  const std::size_t dim = space.size();
  Rng rng = make_rng(budget.seed, 0x6465);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, pop - 1);
  std::uniform_int_distribution<std::size_t> pick_dim(0, dim - 1);

  std::vector<Point> members(pop);
  std::vector<double> fitness(pop);
  Maximum best;
  auto record = [&](const Point& x, double v) {
    ++best.evaluations;
    if (best.evaluations == 1 || v > best.value) {
      best.value = v;
      best.x = x;
    }
  };
  for (std::size_t i = 0; i < pop; ++i) {
    members[i] = space.sample(rng);
    fitness[i] = objective(members[i]);
    record(members[i], fitness[i]);
  }

  Point trial(dim);
  while (best.evaluations < budget.max_evals) {
    for (std::size_t i = 0; i < pop && best.evaluations < budget.max_evals; ++i) {
      std::size_t r1, r2, r3;
      do r1 = pick(rng); while (r1 == i);
      do r2 = pick(rng); while (r2 == i || r2 == r1);
      do r3 = pick(rng); while (r3 == i || r3 == r1 || r3 == r2);
      const std::size_t forced = pick_dim(rng);
      for (std::size_t d = 0; d < dim; ++d) {
        if (d == forced || unit(rng) < params.crossover) {
          const double v = members[r1][d] + params.mutation * (members[r2][d] - members[r3][d]);
          trial[d] = space[d].snap(v);
        } else {
          trial[d] = members[i][d];
        }
      }
      const double v = objective(trial);
      record(trial, v);
      if (v >= fitness[i]) {
        members[i] = trial;
        fitness[i] = v;
      }
    }
  }
  return best;
}

namespace {

struct Normalizer {
  const SearchSpace& space;

  Point to_x(const Point& u) const {
    Point x(u.size());
    for (std::size_t d = 0; d < u.size(); ++d) {
      x[d] = space[d].snap(space[d].lower() + u[d] * (space[d].upper() - space[d].lower()));
    }
    return x;
  }
  Point to_u(const Point& x) const {
    Point u(x.size());
    for (std::size_t d = 0; d < x.size(); ++d) {
      u[d] = (x[d] - space[d].lower()) / (space[d].upper() - space[d].lower());
    }
    return u;
  }
};

constexpr std::size_t kMaxAscentIterations = 200;
constexpr double kMinStep = 1e-6;

AscentPath ascend(const ProbabilisticClassifier& classifier, const SearchSpace& space,
                  const Point& start) {
  const Normalizer norm{space};
  const std::size_t dim = space.size();
  AscentPath path;
  path.start = start;
  Point u = norm.to_u(start);
  Point x = start;
  std::vector<double> grad_x(dim);
  double value = classifier.predict_with_gradient(x, grad_x);
  path.start_value = value;

  double t = -1.0;  // step scale, set from the first gradient
  Point grad_u(dim);
  Point trial_u(dim);
  for (; path.iterations < kMaxAscentIterations; ++path.iterations) {
    double gnorm = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      grad_u[d] = grad_x[d] * (space[d].upper() - space[d].lower());
      gnorm += grad_u[d] * grad_u[d];
    }
    gnorm = std::sqrt(gnorm);
    if (!(gnorm > 0.0)) break;
    if (t < 0.0) t = 0.1 / gnorm;

    bool accepted = false;
    double moved = 0.0;
    while (true) {
      double directional = 0.0;
      moved = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        trial_u[d] = std::clamp(u[d] + t * grad_u[d], 0.0, 1.0);
        const double delta = trial_u[d] - u[d];
        directional += grad_u[d] * delta;
        moved += delta * delta;
      }
      moved = std::sqrt(moved);
      if (moved < kMinStep) break;
      const Point trial_x = norm.to_x(trial_u);
      std::vector<double> trial_grad(dim);
      const double trial_value = classifier.predict_with_gradient(trial_x, trial_grad);
      if (trial_value > value && trial_value >= value + 1e-4 * directional) {
        u = trial_u;
        x = trial_x;
        value = trial_value;
        grad_x = std::move(trial_grad);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted || moved < kMinStep) break;
    t *= 2.0;
  }
  path.end = x;
  path.end_value = value;
  return path;
}

}  // namespace

MultistartResult maximize_gradient_multistart(const ProbabilisticClassifier& classifier,
                                              const SearchSpace& space, std::size_t restarts,
                                              std::uint64_t seed) {
  if (!classifier.differentiable()) {
    throw DomainError("gradient ascent requires a differentiable classifier");
  }
  if (!space.all_continuous()) {
    throw DomainError("gradient ascent requires a continuous space");
  }
  if (restarts < 1) throw DomainError("need at least one restart");
  Rng rng = make_rng(seed, 0x677261);
  MultistartResult result;
  for (std::size_t r = 0; r < restarts; ++r) {
    AscentPath path = ascend(classifier, space, space.sample(rng));
    if (r == 0 || path.end_value > result.best.value) {
      result.best.x = path.end;
      result.best.value = path.end_value;
    }
    result.best.evaluations += path.iterations + 1;
    result.paths.push_back(std::move(path));
  }
  return result;
}

Point suggest(const ProbabilisticClassifier& classifier, const SearchSpace& space,
              const SuggestOptions& options) {
  MaximizerMethod method = options.method;
  if (method == MaximizerMethod::automatic) {
    if (space.all_continuous()) {
      method = classifier.differentiable() ? MaximizerMethod::gradient_multistart
                                           : MaximizerMethod::differential_evolution;
    } else {
      method = MaximizerMethod::random_search;
    }
  }
  const Objective objective = [&](const Point& x) { return classifier.predict(x); };
  Point x;
  switch (method) {
    case MaximizerMethod::gradient_multistart:
      x = maximize_gradient_multistart(classifier, space, options.restarts, options.seed).best.x;
      break;
    case MaximizerMethod::differential_evolution:
      x = maximize_de(objective, space,
                      {MaximizerMethod::differential_evolution, options.de_evals, options.seed},
                      options.de)
              .x;
      break;
    case MaximizerMethod::random_search:
    case MaximizerMethod::automatic:
      x = maximize_random_search(
              objective, space,
              {MaximizerMethod::random_search, options.random_search_evals, options.seed})
              .x;
      break;
  }
  // Ordinal coordinates are rounded to the nearest allowed value.
  return space.snap(x);
}

}  // namespace bore
