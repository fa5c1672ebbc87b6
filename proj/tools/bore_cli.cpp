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

// Command-line front end: run experiments, aggregate traces, and write the
// toy density-ratio grid.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bore/experiment.hpp"

namespace {

using nlohmann::json;

struct RunFlags {
  std::string config_path;
  std::optional<std::string> benchmark;
  std::optional<std::string> method;
  std::optional<double> gamma;
  std::optional<std::size_t> n_init;
  std::optional<std::size_t> n_iterations;
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> seed_count;
  std::optional<std::size_t> seed_base;
  std::optional<double> noise_std;
  std::optional<std::string> calibration;
  std::optional<std::string> maximizer;
  std::optional<int> mlp_steps;
  std::optional<std::string> output_dir;
  std::optional<std::size_t> threads;
  bool record_wall_time = false;
};

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw bore::ConfigError("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw bore::ConfigError("malformed config " + path + ": " + e.what());
  }
}

// Flags are written over the document so they go through the same validation.
void apply_flags(const RunFlags& f, json& doc) {
  if (!doc.is_object()) throw bore::ConfigError("config must be a JSON object");
  if (f.benchmark) doc["benchmark"] = *f.benchmark;
  if (f.method) doc["method"] = *f.method;
  if (f.gamma) doc["gamma"] = *f.gamma;
  if (f.n_init) doc["n_init"] = *f.n_init;
  if (f.n_iterations) doc["n_iterations"] = *f.n_iterations;
  if (!f.seeds.empty()) {
    doc["seeds"] = f.seeds;
  } else if (f.seed_count || f.seed_base) {
    json s = json::object();
    if (doc.contains("seeds") && doc["seeds"].is_object()) s = doc["seeds"];
    if (f.seed_count) s["count"] = *f.seed_count;
    if (f.seed_base) s["base"] = *f.seed_base;
    doc["seeds"] = s;
  }
  if (f.noise_std) doc["noise_std"] = *f.noise_std;
  if (f.calibration) doc["calibration"] = *f.calibration;
  if (f.maximizer) doc["maximizer"]["method"] = *f.maximizer;
  if (f.mlp_steps) doc["mlp"]["steps_per_iteration"] = *f.mlp_steps;
  if (f.output_dir) doc["output_dir"] = *f.output_dir;
  if (f.threads) doc["threads"] = *f.threads;
  if (f.record_wall_time) doc["record_wall_time"] = true;
}

int cmd_run(const RunFlags& flags) {
  json doc = load_config(flags.config_path);
  apply_flags(flags, doc);
  const bore::RunConfig config = bore::parse_run_config(doc);
  bore::write_run_outputs(config);
  std::cout << "wrote " << config.seeds.size() << " traces to " << config.output_dir << "\n";
  return 0;
}

int cmd_aggregate(const std::string& dir, const std::string& output) {
  const bore::Aggregate agg = bore::aggregate_directory(dir);
  const std::filesystem::path out =
      output.empty() ? std::filesystem::path(dir) / "aggregate.csv" : std::filesystem::path(output);
  std::ofstream file(out, std::ios::binary);
  if (!file) throw bore::ConfigError("cannot write " + out.string());
  file << bore::aggregate_csv(agg);
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_dre_demo(const bore::DreDemoOptions& options, const std::string& output) {
  const std::string csv = bore::dre_demo_csv(options);
  if (output == "-") {
    std::cout << csv;
    return 0;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) throw bore::ConfigError("cannot write " + output);
  file << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bore: Bayesian optimization by density-ratio estimation"};
  app.require_subcommand(1);

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment from a JSON config");
  run_cmd->add_option("-c,--config", run.config_path, "JSON config file");
  run_cmd->add_option("--benchmark", run.benchmark, "forrester or sinusoid");
  run_cmd->add_option("--method", run.method, "bore-mlp, bore-rf, tpe or random");
  run_cmd->add_option("--gamma", run.gamma, "Quantile in (0, 1)");
  run_cmd->add_option("--n-init", run.n_init, "Initial random designs");
  run_cmd->add_option("--n-iterations", run.n_iterations, "Optimization iterations");
  run_cmd->add_option("--seeds", run.seeds, "Explicit seed list")->delimiter(',');
  run_cmd->add_option("--seed-count", run.seed_count, "Number of consecutive seeds");
  run_cmd->add_option("--seed-base", run.seed_base, "First seed of the consecutive range");
  run_cmd->add_option("--noise-std", run.noise_std, "Observation noise standard deviation");
  run_cmd->add_option("--calibration", run.calibration, "none, platt or isotonic");
  run_cmd->add_option("--maximizer", run.maximizer,
                      "auto, random_search, differential_evolution or gradient_multistart");
  run_cmd->add_option("--mlp-steps", run.mlp_steps, "Adam steps per iteration");
  run_cmd->add_option("-o,--output-dir", run.output_dir, "Directory for traces");
  run_cmd->add_option("--threads", run.threads, "Worker threads (0 = all cores)");
  run_cmd->add_flag("--record-wall-time", run.record_wall_time,
                    "Fill the elapsed_s column (traces are then not reproducible)");

  std::string agg_dir;
  std::string agg_output;
  CLI::App* agg_cmd = app.add_subcommand("aggregate", "Aggregate the traces in a directory");
  agg_cmd->add_option("dir", agg_dir, "Directory holding trace_*.csv files")->required();
  agg_cmd->add_option("-o,--output", agg_output, "Output file (default <dir>/aggregate.csv)");

  bore::DreDemoOptions demo;
  std::string demo_output = "dre_demo.csv";
  CLI::App* demo_cmd = app.add_subcommand("dre-demo", "Ratio estimates on the Gaussian toy problem");
  demo_cmd->add_option("--gamma", demo.gamma, "Fraction of samples from ell")->capture_default_str();
  demo_cmd->add_option("--n", demo.n, "Total samples")->capture_default_str();
  demo_cmd->add_option("--seed", demo.seed, "Seed")->capture_default_str();
  demo_cmd->add_option("--grid-size", demo.grid_size, "Grid points on [-6, 6]")->capture_default_str();
  demo_cmd->add_option("--mlp-steps", demo.mlp_steps, "Adam steps for the MLP")->capture_default_str();
  demo_cmd->add_option("--trees", demo.forest_trees, "Random forest size")->capture_default_str();
  demo_cmd->add_option("-o,--output", demo_output, "Output CSV, '-' for stdout")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(run);
    if (agg_cmd->parsed()) return cmd_aggregate(agg_dir, agg_output);
    if (demo_cmd->parsed()) return cmd_dre_demo(demo, demo_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
