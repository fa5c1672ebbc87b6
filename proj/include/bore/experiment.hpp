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

#ifndef BORE_EXPERIMENT_HPP
#define BORE_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bore/bo_loop.hpp"

namespace bore {

/// Invalid or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Method { bore_mlp, bore_rf, tpe, random };

Method parse_method(const std::string& name);
std::string to_string(Method method);

/// A fully resolved experiment description. Every field has a value after
/// parse_run_config, so to_json writes a config that reproduces the run.
struct RunConfig {
  std::string benchmark = "forrester";
  Method method = Method::bore_mlp;
  double gamma = 1.0 / 3.0;
  std::size_t n_init = 4;
  std::size_t n_iterations = 30;
  std::vector<std::uint64_t> seeds;
  double noise_std = 0.0;
  /// Continuous bounds of the single benchmark dimension.
  double lower = 0.0;
  double upper = 1.0;
  MlpConfig mlp;
  ForestConfig forest;
  CalibrationMethod calibration = CalibrationMethod::none;
  SuggestOptions maximizer;
  std::size_t tpe_candidates = 24;
  double tpe_prior_weight = 1.0;
  std::string output_dir = "runs";
  bool record_wall_time = false;
  /// Worker threads for the seed pool; 0 means one per hardware thread.
  std::size_t threads = 0;
};

/// Reads a JSON config. Missing fields take their defaults (gamma, noise and
/// bounds default per benchmark). Unknown keys are rejected.
RunConfig parse_run_config(const nlohmann::json& doc);
nlohmann::json to_json(const RunConfig& config);

Problem make_problem(const RunConfig& config);
RunTrace run_single(const RunConfig& config, const Problem& problem, std::uint64_t seed);
/// Runs every seed on a worker pool; the result order follows config.seeds.
std::vector<RunTrace> run_all(const RunConfig& config);

/// Columns: seed,iteration,phase,x_0..x_{D-1},y,incumbent,regret,elapsed_s.
/// Regret is blank without a known minimum, elapsed_s unless requested.
std::string trace_csv(const RunTrace& trace, bool record_wall_time);

struct AggregateRow {
  std::size_t iteration = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
};

struct Aggregate {
  /// "regret" or "incumbent".
  std::string metric;
  std::vector<AggregateRow> rows;
};

/// Percentile with linear interpolation between order statistics, q in [0, 1].
double percentile(std::vector<double> values, double q);

/// Per-iteration median and quartiles across traces. Uses regret when every
/// record has one, otherwise the incumbent.
Aggregate aggregate_traces(const std::vector<RunTrace>& traces);
std::string aggregate_csv(const Aggregate& aggregate);

/// Parses a file written by trace_csv.
RunTrace read_trace_csv(const std::filesystem::path& path);
/// Aggregates every trace_*.csv file in `dir`. Throws ConfigError when the
/// directory holds no traces or the traces disagree on their length.
Aggregate aggregate_directory(const std::filesystem::path& dir);

std::string trace_file_name(std::uint64_t seed);

/// Runs the experiment and writes one trace per seed, aggregate.csv and
/// manifest.json to config.output_dir. Nothing is written if any run fails.
void write_run_outputs(const RunConfig& config);

struct DreDemoOptions {
  double gamma = 0.25;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::size_t grid_size = 512;
  int mlp_steps = 10000;
  int forest_trees = 100;
};

/// Ratio estimates for the Gaussian-mixture toy problem on a uniform grid over
/// [-6, 6]. Columns: x,true_ratio,kde_ratio,mlp_ratio,rf_ratio.
std::string dre_demo_csv(const DreDemoOptions& options);

}  // namespace bore

#endif  // BORE_EXPERIMENT_HPP
