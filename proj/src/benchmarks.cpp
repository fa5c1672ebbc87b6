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

#include "bore/benchmarks.hpp"

#include <algorithm>
#include <cmath>

namespace bore {

double forrester(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("forrester is defined on [0, 1]");
  }
  const double a = 6.0 * x - 2.0;
  return a * a * std::sin(12.0 * x - 4.0);
}

double sinusoid_quadratic(double x, double lo, double hi) {
  if (!(x >= lo && x <= hi)) {
    throw DomainError("sinusoid_quadratic evaluated outside its bounds");
  }
  return std::sin(3.0 * x) + x * x - 0.7 * x;
}

GridMinimum grid_minimum(const std::function<double(double)>& f, double lo, double hi,
                         int grid_points) {
  if (!(lo < hi) || grid_points < 2) throw DomainError("invalid grid");
  const double step = (hi - lo) / (grid_points - 1);
  int best_i = 0;
  double best = f(lo);
  for (int i = 1; i < grid_points; ++i) {
    const double v = f(i + 1 == grid_points ? hi : lo + step * i);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  // Golden-section search on the two cells around the grid minimum.
  double a = std::max(lo, lo + step * (best_i - 1));
  double b = std::min(hi, lo + step * (best_i + 1));
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double v = f(x);
  if (v < best) return {x, v};
  return {std::clamp(lo + step * best_i, lo, hi), best};
}

Benchmark make_benchmark(const std::string& name) {
  if (name == "forrester") {
    auto f1 = [](double x) { return forrester(x); };
    return Benchmark{name, SearchSpace({Dimension::continuous(0.0, 1.0)}),
                     [](const Point& x) { return forrester(x.at(0)); }, 0.05,
                     grid_minimum(f1, 0.0, 1.0), 0.25};
  }
  if (name == "sinusoid") {
    auto f1 = [](double x) { return sinusoid_quadratic(x); };
    return Benchmark{name, SearchSpace({Dimension::continuous(-1.0, 2.0)}),
                     [](const Point& x) { return sinusoid_quadratic(x.at(0)); }, 0.2,
                     grid_minimum(f1, -1.0, 2.0), 1.0 / 3.0};
  }
  throw DomainError("unknown benchmark '" + name + "'");
}

std::vector<std::string> benchmark_names() { return {"forrester", "sinusoid"}; }

double noisy_eval(const Benchmark& bench, const Point& x, Rng& rng) {
  const double clean = bench.f(x);
  if (bench.noise_std <= 0.0) return clean;
  std::normal_distribution<double> noise(0.0, bench.noise_std);
  return clean + noise(rng);
}

}  // namespace bore
