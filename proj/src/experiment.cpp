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

#include "bore/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "bore/kde.hpp"
#include "bore/ratio.hpp"

namespace bore {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& known) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
T read(const json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + key + "' has the wrong type");
  }
}

std::size_t read_count(const json& obj, const std::string& key, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("field '" + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

int read_int(const json& obj, const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError("field '" + key + "' must be an integer");
  return v.get<int>();
}

double read_number(const json& obj, const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("field '" + key + "' must be a number");
  return v.get<double>();
}

std::vector<std::uint64_t> read_seeds(const json& doc) {
  if (!doc.contains("seeds")) {
    std::vector<std::uint64_t> seeds(20);
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
    return seeds;
  }
  const json& s = doc.at("seeds");
  std::vector<std::uint64_t> seeds;
  if (s.is_array()) {
    for (const json& v : s) {
      if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<long long>() < 0)) {
        throw ConfigError("seeds must be nonnegative integers");
      }
      seeds.push_back(v.get<std::uint64_t>());
    }
  } else if (s.is_object()) {
    reject_unknown(s, "seeds", {"count", "base"});
    const std::size_t count = read_count(s, "count", 20);
    const std::size_t base = read_count(s, "base", 0);
    for (std::size_t i = 0; i < count; ++i) seeds.push_back(base + i);
  } else {
    throw ConfigError("seeds must be a list or {count, base}");
  }
  if (seeds.empty()) throw ConfigError("seeds must not be empty");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("seeds must be distinct");
  }
  return seeds;
}

void parse_mlp(const json& obj, MlpConfig& mlp) {
  reject_unknown(obj, "mlp", {"hidden_widths", "activation", "batch_size",
                              "steps_per_iteration", "adam"});
  if (obj.contains("hidden_widths")) {
    mlp.hidden_widths.clear();
    const json& w = obj.at("hidden_widths");
    if (!w.is_array()) throw ConfigError("mlp.hidden_widths must be a list");
    for (const json& v : w) {
      if (!v.is_number_integer()) throw ConfigError("mlp.hidden_widths must hold integers");
      mlp.hidden_widths.push_back(v.get<int>());
    }
  }
  const std::string act = read<std::string>(obj, "activation", "auto");
  if (act == "relu") {
    mlp.activation = Activation::relu;
  } else if (act == "elu") {
    mlp.activation = Activation::elu;
  } else if (act != "auto") {
    throw ConfigError("mlp.activation must be relu, elu or auto");
  }
  mlp.batch_size = read_int(obj, "batch_size", mlp.batch_size);
  mlp.steps_per_iteration = read_int(obj, "steps_per_iteration", mlp.steps_per_iteration);
  if (obj.contains("adam")) {
    const json& a = obj.at("adam");
    reject_unknown(a, "mlp.adam", {"step_size", "beta1", "beta2", "epsilon"});
    mlp.adam.step_size = read_number(a, "step_size", mlp.adam.step_size);
    mlp.adam.beta1 = read_number(a, "beta1", mlp.adam.beta1);
    mlp.adam.beta2 = read_number(a, "beta2", mlp.adam.beta2);
    mlp.adam.epsilon = read_number(a, "epsilon", mlp.adam.epsilon);
  }
}

void parse_forest(const json& obj, ForestConfig& forest) {
  reject_unknown(obj, "forest", {"n_trees", "min_samples_split", "max_depth", "bootstrap",
                                 "features_per_split"});
  forest.n_trees = read_int(obj, "n_trees", forest.n_trees);
  forest.min_samples_split = read_int(obj, "min_samples_split", forest.min_samples_split);
  if (obj.contains("max_depth") && !obj.at("max_depth").is_null()) {
    forest.max_depth = read_int(obj, "max_depth", 0);
  }
  forest.bootstrap = read<bool>(obj, "bootstrap", forest.bootstrap);
  if (obj.contains("features_per_split")) {
    const json& f = obj.at("features_per_split");
    if (f.is_string() && f.get<std::string>() == "all") {
      forest.features_per_split.reset();
    } else if (f.is_string() && f.get<std::string>() == "sqrt") {
      // The benchmarks are one-dimensional.
      forest.features_per_split = 1;
    } else if (f.is_number_integer()) {
      forest.features_per_split = f.get<int>();
    } else {
      throw ConfigError("forest.features_per_split must be \"all\", \"sqrt\" or an integer");
    }
  }
}

void parse_maximizer_options(const json& obj, SuggestOptions& opts) {
  reject_unknown(obj, "maximizer", {"method", "random_search_evals", "de_evals", "restarts", "de"});
  if (obj.contains("method")) {
    try {
      opts.method = parse_maximizer(read<std::string>(obj, "method", "auto"));
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  opts.random_search_evals = read_count(obj, "random_search_evals", opts.random_search_evals);
  opts.de_evals = read_count(obj, "de_evals", opts.de_evals);
  opts.restarts = read_count(obj, "restarts", opts.restarts);
  if (obj.contains("de")) {
    const json& d = obj.at("de");
    reject_unknown(d, "maximizer.de", {"population_size", "mutation", "crossover"});
    opts.de.population_size = read_count(d, "population_size", opts.de.population_size);
    opts.de.mutation = read_number(d, "mutation", opts.de.mutation);
    opts.de.crossover = read_number(d, "crossover", opts.de.crossover);
  }
}

void validate(const RunConfig& c) {
  if (!(c.gamma > 0.0 && c.gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (c.n_init < 2) throw ConfigError("n_init must be at least 2");
  if (!(c.noise_std >= 0.0) || !std::isfinite(c.noise_std)) {
    throw ConfigError("noise_std must be finite and nonnegative");
  }
  if (!(std::isfinite(c.lower) && std::isfinite(c.upper) && c.lower < c.upper)) {
    throw ConfigError("space bounds must be finite with lower < upper");
  }
  if (c.benchmark == "forrester" && (c.lower < 0.0 || c.upper > 1.0)) {
    throw ConfigError("forrester bounds must lie inside [0, 1]");
  }
  if (c.maximizer.random_search_evals < 1) throw ConfigError("random_search_evals must be >= 1");
  if (c.maximizer.restarts < 1) throw ConfigError("restarts must be >= 1");
  if (c.tpe_candidates < 1) throw ConfigError("tpe.candidates must be >= 1");
  if (!(c.tpe_prior_weight >= 0.0)) throw ConfigError("tpe.prior_weight must be >= 0");
  if (c.output_dir.empty()) throw ConfigError("output_dir must not be empty");
  try {
    c.mlp.validate();
    c.forest.validate();
    c.maximizer.de.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (c.maximizer.de_evals < c.maximizer.de.population_size) {
    throw ConfigError("de_evals must cover the DE population");
  }
}

}  // namespace

Method parse_method(const std::string& name) {
  if (name == "bore-mlp") return Method::bore_mlp;
  if (name == "bore-rf") return Method::bore_rf;
  if (name == "tpe") return Method::tpe;
  if (name == "random") return Method::random;
  throw ConfigError("unknown method '" + name + "' (expected bore-mlp, bore-rf, tpe or random)");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::bore_mlp:
      return "bore-mlp";
    case Method::bore_rf:
      return "bore-rf";
    case Method::tpe:
      return "tpe";
    case Method::random:
      return "random";
  }
  return "bore-mlp";
}

RunConfig parse_run_config(const json& doc) {
  reject_unknown(doc, "config",
                 {"benchmark", "method", "gamma", "n_init", "n_iterations", "seeds", "noise_std",
                  "space", "mlp", "forest", "calibration", "maximizer", "tpe", "output_dir",
                  "record_wall_time", "threads"});
  RunConfig c;
  c.benchmark = read<std::string>(doc, "benchmark", c.benchmark);
  const Benchmark bench = [&] {
    try {
      return make_benchmark(c.benchmark);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }();
  c.method = parse_method(read<std::string>(doc, "method", to_string(c.method)));
  c.gamma = read_number(doc, "gamma", bench.default_gamma);
  c.n_init = read_count(doc, "n_init", c.n_init);
  c.n_iterations = read_count(doc, "n_iterations", c.n_iterations);
  c.seeds = read_seeds(doc);
  c.noise_std = read_number(doc, "noise_std", bench.noise_std);
  c.lower = bench.space[0].lower();
  c.upper = bench.space[0].upper();
  if (doc.contains("space")) {
    const json& s = doc.at("space");
    if (!s.is_array() || s.size() != 1) {
      throw ConfigError("space must list exactly one dimension for this benchmark");
    }
    reject_unknown(s[0], "space[0]", {"kind", "lower", "upper"});
    if (read<std::string>(s[0], "kind", "continuous") != "continuous") {
      throw ConfigError("benchmark dimensions must be continuous");
    }
    c.lower = read_number(s[0], "lower", c.lower);
    c.upper = read_number(s[0], "upper", c.upper);
  }
  if (doc.contains("mlp")) parse_mlp(doc.at("mlp"), c.mlp);
  if (doc.contains("forest")) parse_forest(doc.at("forest"), c.forest);
  try {
    c.calibration = parse_calibration(read<std::string>(doc, "calibration", "none"));
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (doc.contains("maximizer")) parse_maximizer_options(doc.at("maximizer"), c.maximizer);
  if (doc.contains("tpe")) {
    const json& t = doc.at("tpe");
    reject_unknown(t, "tpe", {"candidates", "prior_weight"});
    c.tpe_candidates = read_count(t, "candidates", c.tpe_candidates);
    c.tpe_prior_weight = read_number(t, "prior_weight", c.tpe_prior_weight);
  }
  c.output_dir = read<std::string>(doc, "output_dir", c.output_dir);
  c.record_wall_time = read<bool>(doc, "record_wall_time", c.record_wall_time);
  c.threads = read_count(doc, "threads", c.threads);
  validate(c);
  return c;
}

json to_json(const RunConfig& c) {
  json mlp = {{"hidden_widths", c.mlp.hidden_widths},
              {"activation", c.mlp.activation
                                 ? (*c.mlp.activation == Activation::relu ? "relu" : "elu")
                                 : "auto"},
              {"batch_size", c.mlp.batch_size},
              {"steps_per_iteration", c.mlp.steps_per_iteration},
              {"adam",
               {{"step_size", c.mlp.adam.step_size},
                {"beta1", c.mlp.adam.beta1},
                {"beta2", c.mlp.adam.beta2},
                {"epsilon", c.mlp.adam.epsilon}}}};
  json forest = {{"n_trees", c.forest.n_trees},
                 {"min_samples_split", c.forest.min_samples_split},
                 {"max_depth", c.forest.max_depth ? json(*c.forest.max_depth) : json(nullptr)},
                 {"bootstrap", c.forest.bootstrap},
                 {"features_per_split", c.forest.features_per_split
                                            ? json(*c.forest.features_per_split)
                                            : json("all")}};
  json maximizer = {{"method", to_string(c.maximizer.method)},
                    {"random_search_evals", c.maximizer.random_search_evals},
                    {"de_evals", c.maximizer.de_evals},
                    {"restarts", c.maximizer.restarts},
                    {"de",
                     {{"population_size", c.maximizer.de.population_size},
                      {"mutation", c.maximizer.de.mutation},
                      {"crossover", c.maximizer.de.crossover}}}};
  return json{{"benchmark", c.benchmark},
              {"method", to_string(c.method)},
              {"gamma", c.gamma},
              {"n_init", c.n_init},
              {"n_iterations", c.n_iterations},
              {"seeds", c.seeds},
              {"noise_std", c.noise_std},
              {"space", json::array({{{"kind", "continuous"}, {"lower", c.lower}, {"upper", c.upper}}})},
              {"mlp", mlp},
              {"forest", forest},
              {"calibration", to_string(c.calibration)},
              {"maximizer", maximizer},
              {"tpe", {{"candidates", c.tpe_candidates}, {"prior_weight", c.tpe_prior_weight}}},
              {"output_dir", c.output_dir},
              {"record_wall_time", c.record_wall_time},
              {"threads", c.threads}};
}

Problem make_problem(const RunConfig& config) {
  const double lo = config.lower;
  const double hi = config.upper;
  std::function<double(double)> f1;
  if (config.benchmark == "forrester") {
    f1 = [](double x) { return forrester(x); };
  } else if (config.benchmark == "sinusoid") {
    f1 = [lo, hi](double x) { return sinusoid_quadratic(x, lo, hi); };
  } else {
    throw ConfigError("unknown benchmark '" + config.benchmark + "'");
  }
  return Problem{config.benchmark, SearchSpace({Dimension::continuous(lo, hi)}),
                 [f1](const Point& x) { return f1(x.at(0)); }, config.noise_std,
                 grid_minimum(f1, lo, hi).value};
}

RunTrace run_single(const RunConfig& config, const Problem& problem, std::uint64_t seed) {
  switch (config.method) {
    case Method::bore_mlp:
    case Method::bore_rf: {
      BoreSettings s;
      s.gamma = config.gamma;
      s.n_init = config.n_init;
      s.n_iterations = config.n_iterations;
      s.classifier = config.method == Method::bore_mlp ? ClassifierKind::mlp : ClassifierKind::forest;
      s.mlp = config.mlp;
      s.forest = config.forest;
      s.calibration = config.calibration;
      s.maximizer = config.maximizer;
      return run_bore(problem, s, seed);
    }
    case Method::tpe: {
      TpeSettings s;
      s.gamma = config.gamma;
      s.n_init = config.n_init;
      s.n_iterations = config.n_iterations;
      s.candidates = config.tpe_candidates;
      s.prior_weight = config.tpe_prior_weight;
      return run_tpe(problem, s, seed);
    }
    case Method::random:
      return run_random_search(problem, config.n_init + config.n_iterations, seed);
  }
  throw ConfigError("unhandled method");
}

std::vector<RunTrace> run_all(const RunConfig& config) {
  const Problem problem = make_problem(config);
  const std::size_t n = config.seeds.size();
  std::size_t workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, n);

  std::vector<RunTrace> traces(n);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        traces[i] = run_single(config, problem, config.seeds[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return traces;
}

std::string trace_csv(const RunTrace& trace, bool record_wall_time) {
  const std::size_t dim = trace.records.empty() ? 0 : trace.records.front().x.size();
  std::ostringstream out;
  out << "seed,iteration,phase";
  for (std::size_t d = 0; d < dim; ++d) out << ",x_" << d;
  out << ",y,incumbent,regret,elapsed_s\n";
  for (const TraceRecord& r : trace.records) {
    out << trace.seed << ',' << r.iteration << ',' << (r.phase == Phase::init ? "init" : "bo");
    for (double v : r.x) out << ',' << fmt(v);
    out << ',' << fmt(r.y) << ',' << fmt(r.incumbent) << ',';
    if (r.regret) out << fmt(*r.regret);
    out << ',';
    if (record_wall_time) out << fmt(r.elapsed_s);
    out << '\n';
  }
  return out.str();
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("percentile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Aggregate aggregate_traces(const std::vector<RunTrace>& traces) {
  if (traces.empty()) throw ConfigError("no traces to aggregate");
  const std::size_t len = traces.front().records.size();
  for (const RunTrace& t : traces) {
    if (t.records.size() != len) throw ConfigError("traces have different lengths");
  }
  bool all_regret = true;
  for (const RunTrace& t : traces) {
    for (const TraceRecord& r : t.records) all_regret = all_regret && r.regret.has_value();
  }
  Aggregate agg;
  agg.metric = all_regret ? "regret" : "incumbent";
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<double> v;
    for (const RunTrace& t : traces) {
      v.push_back(all_regret ? *t.records[i].regret : t.records[i].incumbent);
    }
    agg.rows.push_back({i, percentile(v, 0.5), percentile(v, 0.25), percentile(v, 0.75)});
  }
  return agg;
}

std::string aggregate_csv(const Aggregate& agg) {
  std::ostringstream out;
  out << "iteration,median_" << agg.metric << ",q25_" << agg.metric << ",q75_" << agg.metric
      << '\n';
  for (const AggregateRow& r : agg.rows) {
    out << r.iteration << ',' << fmt(r.median) << ',' << fmt(r.q25) << ',' << fmt(r.q75) << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_double(const std::string& s, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(path.string() + ": bad number '" + s + "'");
  }
}

}  // namespace

RunTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty file");
  const std::vector<std::string> header = split_csv_line(line);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError(path.string() + ": missing column " + name);
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_seed = column("seed");
  const std::size_t c_iter = column("iteration");
  const std::size_t c_phase = column("phase");
  const std::size_t c_y = column("y");
  const std::size_t c_inc = column("incumbent");
  const std::size_t c_regret = column("regret");
  const std::size_t c_time = column("elapsed_s");
  std::vector<std::size_t> c_x;
  for (std::size_t d = 0;; ++d) {
    const auto it = std::find(header.begin(), header.end(), "x_" + std::to_string(d));
    if (it == header.end()) break;
    c_x.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  RunTrace trace;
  trace.method = "";
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ConfigError(path.string() + ": row has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(header.size()));
    }
    TraceRecord r;
    trace.seed = static_cast<std::uint64_t>(parse_double(cells[c_seed], path));
    r.iteration = static_cast<std::size_t>(parse_double(cells[c_iter], path));
    r.phase = cells[c_phase] == "init" ? Phase::init : Phase::bo;
    for (std::size_t c : c_x) r.x.push_back(parse_double(cells[c], path));
    r.y = parse_double(cells[c_y], path);
    r.incumbent = parse_double(cells[c_inc], path);
    if (!cells[c_regret].empty()) r.regret = parse_double(cells[c_regret], path);
    if (!cells[c_time].empty()) r.elapsed_s = parse_double(cells[c_time], path);
    trace.records.push_back(std::move(r));
  }
  return trace;
}

Aggregate aggregate_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ConfigError(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("trace_", 0) == 0 &&
        entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw ConfigError("no trace_*.csv files in " + dir.string());
  std::sort(files.begin(), files.end());

  std::vector<RunTrace> traces;
  for (const auto& f : files) traces.push_back(read_trace_csv(f));
  // With a strict majority length only the other files are listed; otherwise all of them.
  std::map<std::size_t, std::size_t> counts;
  for (const RunTrace& t : traces) ++counts[t.records.size()];
  if (counts.size() > 1) {
    std::optional<std::size_t> majority;
    for (const auto& [len, n] : counts) {
      if (2 * n > traces.size()) majority = len;
    }
    std::string msg = "inconsistent iteration counts:";
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (majority && traces[i].records.size() == *majority) continue;
      msg += " " + files[i].filename().string() + " (" +
             std::to_string(traces[i].records.size()) + ")";
    }
    throw ConfigError(msg);
  }
  return aggregate_traces(traces);
}

std::string trace_file_name(std::uint64_t seed) {
  return "trace_seed" + std::to_string(seed) + ".csv";
}

void write_run_outputs(const RunConfig& config) {
  const std::vector<RunTrace> traces = run_all(config);
  const Aggregate agg = aggregate_traces(traces);

  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
  };
  for (const RunTrace& t : traces) {
    write(dir / trace_file_name(t.seed), trace_csv(t, config.record_wall_time));
  }
  write(dir / "aggregate.csv", aggregate_csv(agg));
  write(dir / "manifest.json", to_json(config).dump(2) + "\n");
}

std::string dre_demo_csv(const DreDemoOptions& options) {
  if (!(options.gamma > 0.0 && options.gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  if (options.grid_size < 2) throw DomainError("grid needs at least two points");
  ToyMixture toy;
  toy.gamma = options.gamma;
  toy.validate();
  const ToySample sample = toy_sample(toy, options.n, options.seed);
  const LabeledSet labeled = sample.labeled(options.gamma);

  std::vector<Point> below;
  std::vector<Point> above;
  for (std::size_t i = 0; i < sample.xs.size(); ++i) {
    (sample.zs[i] ? below : above).push_back({sample.xs[i]});
  }
  const Kde ell = Kde::fit(below);
  const Kde g = Kde::fit(above);

  const SearchSpace space({Dimension::continuous(-6.0, 6.0)});
  MlpConfig mlp_config;
  mlp_config.steps_per_iteration = options.mlp_steps;
  mlp_config.seed = options.seed;
  MlpClassifier mlp(FeatureEncoder(space), mlp_config);
  mlp.fit(labeled);
  ForestConfig forest_config;
  forest_config.n_trees = options.forest_trees;
  forest_config.seed = options.seed;
  ForestClassifier forest(space, forest_config);
  forest.fit(labeled);

  std::ostringstream out;
  out << "x,true_ratio,kde_ratio,mlp_ratio,rf_ratio\n";
  for (std::size_t i = 0; i < options.grid_size; ++i) {
    const double x = -6.0 + 12.0 * static_cast<double>(i) / (options.grid_size - 1);
    const Point p{x};
    const double kde_ratio = relative_ratio(ell.pdf(p), g.pdf(p), options.gamma);
    out << fmt(x) << ',' << fmt(toy_true_ratio(toy, x, options.gamma)) << ',' << fmt(kde_ratio)
        << ',' << fmt(mlp.predict(p) / options.gamma) << ','
        << fmt(forest.predict(p) / options.gamma) << '\n';
  }
  return out.str();
}

}  // namespace bore
