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

#ifndef BORE_RATIO_HPP
#define BORE_RATIO_HPP

#include <cstdint>
#include <functional>
#include <span>

#include "bore/common.hpp"

namespace bore {

/// Point evaluators for the densities of inputs whose outputs fall below
/// (`ell`) and above (`g`) the threshold.
struct DensityPair {
  std::function<double(const Point&)> ell;
  std::function<double(const Point&)> g;
};

struct GaussianPredictive {
  double mu = 0.0;
  double sigma = 1.0;
};

/// A univariate density with a truncation interval wide enough that the mass
/// outside it is negligible.
struct UnivariateDensity {
  std::function<double(double)> pdf;
  double lo = -10.0;
  double hi = 10.0;
};

double normal_pdf(double t);
double normal_cdf(double t);

/// ell / (gamma * ell + (1 - gamma) * g). Throws when both densities vanish.
double relative_ratio(double ell, double g, double gamma);
double relative_ratio(const DensityPair& pair, double gamma, const Point& x);

/// Monotone map from the ordinary ratio to the gamma-relative ratio;
/// h(0) = 0 by continuity.
double h_gamma(double u, double gamma);

/// Probability that a point lies in the positive class: gamma * r_gamma.
double class_posterior(double ell, double g, double gamma);

/// Closed-form expected improvement under a Gaussian predictive.
double ei_gaussian(const GaussianPredictive& pred, double tau);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

MonteCarloEstimate ei_monte_carlo(const GaussianPredictive& pred, double tau,
                                  std::size_t samples, std::uint64_t seed);

/// Integrates the improvement utility against p(y | x) for the joint toy model
/// in which p(x | y) is ell(x) below tau and g(x) above it, with tau the
/// gamma-quantile of `y_marginal`. Fits a single scale K between those EI
/// values and r_gamma on `grid` and returns max_i |ei_i - K r_i| / max_i ei_i.
double ei_from_ratio_check(const DensityPair& pair, const UnivariateDensity& y_marginal,
                           double gamma, std::span<const Point> grid);

}  // namespace bore

#endif  // BORE_RATIO_HPP
