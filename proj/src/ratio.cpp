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

#include "bore/ratio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace bore {

double normal_pdf(double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double relative_ratio(double ell, double g, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError("gamma must lie in [0, 1)");
  }
  if (ell < 0.0 || g < 0.0) {
    throw DomainError("densities must be nonnegative");
  }
  const double denom = gamma * ell + (1.0 - gamma) * g;
  if (denom <= 0.0) {
    throw DomainError("relative ratio undefined where both densities vanish");
  }
  return ell / denom;
}

double relative_ratio(const DensityPair& pair, double gamma, const Point& x) {
  return relative_ratio(pair.ell(x), pair.g(x), gamma);
}

double h_gamma(double u, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw DomainError("gamma must lie in [0, 1)");
  }
  if (u <= 0.0) return 0.0;
  return 1.0 / (gamma + (1.0 - gamma) / u);
}

double class_posterior(double ell, double g, double gamma) {
  return gamma * relative_ratio(ell, g, gamma);
}

double ei_gaussian(const GaussianPredictive& pred, double tau) {
  if (!(pred.sigma > 0.0)) {
    throw DomainError("predictive sigma must be positive");
  }
  const double nu = (tau - pred.mu) / pred.sigma;
  const double value = pred.sigma * (nu * normal_cdf(nu) + normal_pdf(nu));
  return std::max(value, 0.0);
}

MonteCarloEstimate ei_monte_carlo(const GaussianPredictive& pred, double tau,
                                  std::size_t samples, std::uint64_t seed) {
  if (samples < 2) {
    throw DomainError("Monte Carlo EI needs at least two samples");
  }
  Rng rng = make_rng(seed);
  std::normal_distribution<double> draw(pred.mu, pred.sigma);
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double u = std::max(tau - draw(rng), 0.0);
    const double delta = u - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (u - mean);
  }
  const auto n = static_cast<double>(samples);
  const double variance = m2 / (n - 1.0);
  return {mean, std::sqrt(variance / n)};
}

namespace {

constexpr int kQuadratureNodes = 20001;

// Trapezoid rule for f on [a, b].
template <typename F>
double trapezoid(F&& f, double a, double b, int nodes = kQuadratureNodes) {
  if (!(b > a)) return 0.0;
  const double step = (b - a) / (nodes - 1);
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < nodes - 1; ++i) sum += f(a + step * i);
  return sum * step;
}

// Solves P(y <= tau) = gamma by bisection on the quadrature CDF.
double quantile_of(const UnivariateDensity& density, double gamma) {
  const double total = trapezoid(density.pdf, density.lo, density.hi);
  double a = density.lo;
  double b = density.hi;
  for (int it = 0; it < 100 && b - a > 1e-13 * (1.0 + std::abs(a)); ++it) {
    const double mid = 0.5 * (a + b);
    if (trapezoid(density.pdf, density.lo, mid) / total < gamma) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double ei_from_ratio_check(const DensityPair& pair, const UnivariateDensity& y_marginal,
                           double gamma, std::span<const Point> grid) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("gamma must lie in (0, 1)");
  }
  if (grid.empty()) {
    throw DomainError("empty grid");
  }
  const double tau = quantile_of(y_marginal, gamma);

  std::vector<double> ei(grid.size());
  std::vector<double> ratio(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ell = pair.ell(grid[i]);
    const double g = pair.g(grid[i]);
    // p(x | y) switches from ell to g at tau; split the y-integrals there.
    auto joint_below = [&](double y) { return ell * y_marginal.pdf(y); };
    auto joint_above = [&](double y) { return g * y_marginal.pdf(y); };
    auto utility_below = [&](double y) { return (tau - y) * ell * y_marginal.pdf(y); };
    const double evidence =
        trapezoid(joint_below, y_marginal.lo, tau) + trapezoid(joint_above, tau, y_marginal.hi);
    if (!(evidence > 0.0)) {
      throw DomainError("toy model assigns zero density to a grid point");
    }
    ei[i] = trapezoid(utility_below, y_marginal.lo, tau) / evidence;
    ratio[i] = relative_ratio(ell, g, gamma);
  }

  const double ei_max = *std::max_element(ei.begin(), ei.end());
  if (!(ei_max > 0.0)) {
    throw DomainError("expected improvement vanishes on the whole grid");
  }
  if (grid.size() == 1) return 0.0;

  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    num += ei[i] * ratio[i];
    den += ratio[i] * ratio[i];
  }
  const double scale = den > 0.0 ? num / den : 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(ei[i] - scale * ratio[i]));
  }
  return worst / ei_max;
}

}  // namespace bore
