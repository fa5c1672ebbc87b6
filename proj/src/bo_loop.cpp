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

#include "bore/bo_loop.hpp"

#include <chrono>
#include <cmath>

#include "bore/kde.hpp"

namespace bore {

namespace {

// Stream tags for the per-seed generators.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kModelStream = 3;
constexpr std::uint64_t kSuggestStream = 4;
constexpr std::uint64_t kExploreStream = 5;

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
  Rng rng = make_rng(seed, stream * 0x100000001b3ull + index);
  return rng();
}

class TraceRecorder {
 public:
  TraceRecorder(const Problem& problem, std::string method, std::uint64_t seed)
      : problem_(problem), start_(std::chrono::steady_clock::now()) {
    trace_.method = std::move(method);
    trace_.seed = seed;
  }

  void add(Phase phase, const Point& x, double y) {
    TraceRecord r;
    r.iteration = trace_.records.size();
    r.phase = phase;
    r.x = x;
    r.y = y;
    r.incumbent = trace_.records.empty() ? y : std::min(trace_.records.back().incumbent, y);
    if (problem_.known_minimum) {
      // Regret tracks the noise-free value of the best point evaluated so far.
      const double clean = problem_.f(x);
      best_clean_ = trace_.records.empty() ? clean : std::min(best_clean_, clean);
      r.regret = immediate_regret(best_clean_, *problem_.known_minimum);
    }
    r.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    trace_.records.push_back(std::move(r));
  }

  RunTrace take() { return std::move(trace_); }

 private:
  const Problem& problem_;
  std::chrono::steady_clock::time_point start_;
  RunTrace trace_;
  double best_clean_ = 0.0;
};

void check_driver(std::size_t n_init, double gamma) {
  if (n_init < 2) throw DomainError("need at least two initial designs");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
}

}  // namespace

Problem Problem::from_benchmark(const Benchmark& bench) {
  return Problem{bench.name, bench.space, bench.f, bench.noise_std, bench.minimum.value};
}

double Problem::evaluate(const Point& x, Rng& noise) const {
  const double clean = f(x);
  if (noise_std <= 0.0) return clean;
  return clean + std::normal_distribution<double>(0.0, noise_std)(noise);
}

double immediate_regret(double incumbent, double known_minimum) {
  return std::abs(incumbent - known_minimum);
}

std::unique_ptr<ProbabilisticClassifier> make_classifier(const SearchSpace& space,
                                                         const BoreSettings& settings,
                                                         std::uint64_t seed) {
  if (settings.classifier == ClassifierKind::mlp) {
    MlpConfig config = settings.mlp;
    config.seed = seed;
    return std::make_unique<MlpClassifier>(FeatureEncoder(space), config);
  }
  ForestConfig config = settings.forest;
  config.seed = seed;
  return std::make_unique<ForestClassifier>(space, config, settings.calibration);
}

Point bore_step(BoreState& state, const SearchSpace& space, double gamma,
                const SuggestOptions& maximizer) {
  const LabeledSet labeled = assign_labels(state.obs, gamma);
  if (!labeled.has_both_classes()) {
    throw DomainError("labeling produced a single class");
  }
  state.classifier->fit(labeled);
  return suggest(*state.classifier, space, maximizer);
}

RunTrace run_bore(const Problem& problem, const BoreSettings& settings, std::uint64_t seed) {
  check_driver(settings.n_init, settings.gamma);
  const std::string label =
      settings.classifier == ClassifierKind::mlp ? "bore-mlp" : "bore-rf";
  TraceRecorder recorder(problem, label, seed);
  Rng noise = make_rng(seed, kNoiseStream);

  BoreState state{ObservationSet(problem.space.size()),
                  make_classifier(problem.space, settings, derived_seed(seed, kModelStream))};
  for (const Point& x : uniform_sample(problem.space, settings.n_init,
                                       derived_seed(seed, kInitStream))) {
    const double y = problem.evaluate(x, noise);
    state.obs.append(x, y);
    recorder.add(Phase::init, x, y);
  }
  for (std::size_t it = 0; it < settings.n_iterations; ++it) {
    SuggestOptions maximizer = settings.maximizer;
    maximizer.seed = derived_seed(seed, kSuggestStream, it);
    const Point x = bore_step(state, problem.space, settings.gamma, maximizer);
    const double y = problem.evaluate(x, noise);
    state.obs.append(x, y);
    recorder.add(Phase::bo, x, y);
  }
  return recorder.take();
}

std::vector<RunTrace> run_bore(const Problem& problem, const BoreSettings& settings,
                               const std::vector<std::uint64_t>& seeds) {
  std::vector<RunTrace> out;
  for (std::uint64_t s : seeds) out.push_back(run_bore(problem, settings, s));
  return out;
}

RunTrace run_random_search(const Problem& problem, std::size_t n_evals, std::uint64_t seed) {
  if (n_evals < 1) throw DomainError("random search needs at least one evaluation");
  TraceRecorder recorder(problem, "random", seed);
  Rng noise = make_rng(seed, kNoiseStream);
  for (const Point& x : uniform_sample(problem.space, n_evals, derived_seed(seed, kInitStream))) {
    recorder.add(Phase::init, x, problem.evaluate(x, noise));
  }
  return recorder.take();
}

std::vector<RunTrace> run_random_search(const Problem& problem, std::size_t n_evals,
                                        const std::vector<std::uint64_t>& seeds) {
  std::vector<RunTrace> out;
  for (std::uint64_t s : seeds) out.push_back(run_random_search(problem, n_evals, s));
  return out;
}

RunTrace run_tpe(const Problem& problem, const TpeSettings& settings, std::uint64_t seed) {
  check_driver(settings.n_init, settings.gamma);
  TraceRecorder recorder(problem, "tpe", seed);
  Rng noise = make_rng(seed, kNoiseStream);
  Rng explore = make_rng(seed, kExploreStream);
  ObservationSet obs(problem.space.size());
  for (const Point& x : uniform_sample(problem.space, settings.n_init,
                                       derived_seed(seed, kInitStream))) {
    const double y = problem.evaluate(x, noise);
    obs.append(x, y);
    recorder.add(Phase::init, x, y);
  }
  for (std::size_t it = 0; it < settings.n_iterations; ++it) {
    const TpeOptions options{settings.gamma, settings.candidates, settings.prior_weight,
                             derived_seed(seed, kSuggestStream, it)};
    // Until both classes hold two points the densities are undefined; sample uniformly.
    const std::size_t good = assign_labels(obs, settings.gamma).positives();
    const bool startup = good < 2 || obs.size() - good < 2;
    const Point x = startup ? problem.space.sample(explore) : tpe_suggest(problem.space, obs, options);
    const double y = problem.evaluate(x, noise);
    obs.append(x, y);
    recorder.add(Phase::bo, x, y);
  }
  return recorder.take();
}

std::vector<RunTrace> run_tpe(const Problem& problem, const TpeSettings& settings,
                              const std::vector<std::uint64_t>& seeds) {
  std::vector<RunTrace> out;
  for (std::uint64_t s : seeds) out.push_back(run_tpe(problem, settings, s));
  return out;
}

}  // namespace bore
