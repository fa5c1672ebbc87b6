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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("bore_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + BORE_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_traces(const fs::path& dir) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    n += e.path().filename().string().rfind("trace_", 0) == 0;
  }
  return n;
}

TEST(Cli, RunWritesOneTracePerSeedAndIsReproducible) {
  const fs::path dir = fresh_dir("run");
  std::ofstream(dir / "config.json") << R"({"benchmark": "forrester", "method": "bore-mlp",
    "n_iterations": 3, "seeds": {"count": 20, "base": 0},
    "mlp": {"steps_per_iteration": 5}})";
  const std::string config = (dir / "config.json").string();
  ASSERT_EQ(run_cli("run --config " + config + " -o " + (dir / "a").string()), 0);
  EXPECT_EQ(count_traces(dir / "a"), 20u);
  EXPECT_TRUE(fs::exists(dir / "a" / "aggregate.csv"));
  EXPECT_TRUE(fs::exists(dir / "a" / "manifest.json"));

  ASSERT_EQ(run_cli("run --config " + config + " -o " + (dir / "b").string() + " --threads 1"), 0);
  for (int s = 0; s < 20; ++s) {
    const std::string name = "trace_seed" + std::to_string(s) + ".csv";
    EXPECT_EQ(read_file(dir / "a" / name), read_file(dir / "b" / name)) << name;
  }

  // The manifest alone reproduces the run.
  ASSERT_EQ(run_cli("run --config " + (dir / "a" / "manifest.json").string() + " -o " +
                    (dir / "c").string()),
            0);
  EXPECT_EQ(read_file(dir / "a" / "trace_seed3.csv"), read_file(dir / "c" / "trace_seed3.csv"));
  fs::remove_all(dir);
}

TEST(Cli, FlagsOverrideTheConfig) {
  const fs::path dir = fresh_dir("flags");
  std::ofstream(dir / "config.json") << R"({"method": "random", "seeds": [1, 2, 3]})";
  ASSERT_EQ(run_cli("run -c " + (dir / "config.json").string() +
                    " --seeds 7,8 --n-iterations 2 -o " + (dir / "out").string()),
            0);
  EXPECT_EQ(count_traces(dir / "out"), 2u);
  EXPECT_TRUE(fs::exists(dir / "out" / "trace_seed7.csv"));
  fs::remove_all(dir);
}

TEST(Cli, InvalidConfigWritesNothing) {
  const fs::path dir = fresh_dir("invalid");
  std::ofstream(dir / "broken.json") << "{\"benchmark\": ";
  std::ofstream(dir / "gamma.json") << R"({"gamma": 1.5})";
  std::ofstream(dir / "method.json") << R"({"method": "gp"})";
  for (const char* name : {"broken.json", "gamma.json", "method.json", "absent.json"}) {
    const fs::path out = dir / (std::string("out_") + name);
    EXPECT_NE(run_cli("run --config " + (dir / name).string() + " -o " + out.string()), 0) << name;
    EXPECT_FALSE(fs::exists(out)) << name;
  }
  EXPECT_NE(run_cli("run --benchmark nope -o " + (dir / "out_flag").string()), 0);
  EXPECT_FALSE(fs::exists(dir / "out_flag"));
  fs::remove_all(dir);
}

TEST(Cli, DreDemo) {
  const fs::path dir = fresh_dir("dre");
  const std::string args = " --n 200 --grid-size 41 --mlp-steps 100 --trees 10 --seed 3 -o ";
  ASSERT_EQ(run_cli("dre-demo" + args + (dir / "a.csv").string()), 0);
  ASSERT_EQ(run_cli("dre-demo" + args + (dir / "b.csv").string()), 0);
  const std::string csv = read_file(dir / "a.csv");
  EXPECT_EQ(csv, read_file(dir / "b.csv"));

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,true_ratio,kde_ratio,mlp_ratio,rf_ratio");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::stringstream ls(line);
    std::string x, ratio;
    std::getline(ls, x, ',');
    std::getline(ls, ratio, ',');
    EXPECT_LE(std::stod(ratio), 4.0 + 1e-9);
  }
  EXPECT_EQ(rows, 41u);
  EXPECT_NE(run_cli("dre-demo --gamma 1.2 -o " + (dir / "c.csv").string()), 0);
  fs::remove_all(dir);
}

TEST(Cli, Aggregate) {
  const fs::path dir = fresh_dir("aggregate");
  EXPECT_NE(run_cli("aggregate " + dir.string()), 0);
  EXPECT_NE(run_cli("aggregate " + (dir / "missing").string()), 0);
  std::ofstream(dir / "trace_seed0.csv")
      << "seed,iteration,phase,x_0,y,incumbent,regret,elapsed_s\n0,0,init,0.5,1,1,0.2,\n";
  std::ofstream(dir / "trace_seed1.csv")
      << "seed,iteration,phase,x_0,y,incumbent,regret,elapsed_s\n1,0,init,0.5,1,1,0.4,\n";
  ASSERT_EQ(run_cli("aggregate " + dir.string()), 0);
  std::istringstream in(read_file(dir / "aggregate.csv"));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "iteration,median_regret,q25_regret,q75_regret");
  double cells[4];
  char comma;
  std::istringstream(row) >> cells[0] >> comma >> cells[1] >> comma >> cells[2] >> comma >> cells[3];
  EXPECT_EQ(cells[0], 0.0);
  EXPECT_NEAR(cells[1], 0.3, 1e-15);
  EXPECT_NEAR(cells[2], 0.25, 1e-15);
  EXPECT_NEAR(cells[3], 0.35, 1e-15);
  EXPECT_NE(run_cli(""), 0);
  fs::remove_all(dir);
}

}  // namespace
