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

#ifndef BORE_KDE_HPP
#define BORE_KDE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bore/common.hpp"
#include "bore/space.hpp"

namespace bore {

/// Normal-reference (Silverman) bandwidth: sd * (4 / (3 N))^(1/5).
double kde_bandwidth(std::span<const double> samples);

/// Product-Gaussian kernel density estimate.
class Kde {
 public:
  Kde(std::vector<Point> centers, std::vector<double> bandwidths);
  /// Bandwidths chosen per coordinate with kde_bandwidth.
  static Kde fit(std::vector<Point> samples);

  double pdf(std::span<const double> x) const;
  Point sample(Rng& rng) const;

  const std::vector<Point>& centers() const { return centers_; }
  const std::vector<double>& bandwidths() const { return bandwidths_; }

 private:
  std::vector<Point> centers_;
  std::vector<double> bandwidths_;
};

double kde_pdf(const Kde& kde, std::span<const double> x);

/// Parzen model over a mixed search space: a product-Gaussian KDE on the
/// continuous and ordinal coordinates times add-one smoothed frequencies on
/// each categorical coordinate.
class ParzenDensity {
 public:
  /// `prior_weight` > 0 adds a broad kernel centred on the domain (mean at the
  /// midpoint, standard deviation equal to the range) counted as that many samples.
  ParzenDensity(const SearchSpace& space, std::span<const Point> samples,
                double prior_weight = 0.0);

  double pdf(std::span<const double> x) const;
  /// Draw snapped into the space.
  Point sample(Rng& rng) const;

 private:
  SearchSpace space_;
  std::vector<std::size_t> numeric_dims_;
  std::vector<std::size_t> categorical_dims_;
  std::vector<Point> centers_;  // numeric coordinates only
  std::vector<double> bandwidths_;
  std::vector<std::vector<double>> frequencies_;
  double prior_weight_ = 0.0;
  Point prior_center_;
  std::vector<double> prior_bandwidths_;
};

struct TpeOptions {
  double gamma = 1.0 / 3.0;
  std::size_t candidates = 24;
  /// Weight of the broad prior kernel mixed into both densities.
  double prior_weight = 1.0;
  std::uint64_t seed = 0;
};

/// Draws candidates from the good-point model and returns the one maximizing
/// ell(x) / (g(x) + 1e-12).
Point tpe_suggest(const SearchSpace& space, const ObservationSet& obs, const TpeOptions& options);

/// Known-density toy problem: ell is a two-component Gaussian mixture, g a
/// single Gaussian.
struct ToyMixture {
  struct Component {
    double weight;
    double mean;
    double stddev;
  };
  std::vector<Component> ell{{0.3, 2.0, 1.0}, {0.7, -3.0, 0.5}};
  Component g{1.0, 0.0, 2.0};
  double gamma = 0.25;

  void validate() const;
  double ell_pdf(double x) const;
  double g_pdf(double x) const;
};

double toy_true_ratio(const ToyMixture& toy, double x, double gamma);

struct ToySample {
  std::vector<double> xs;
  std::vector<int> zs;

  LabeledSet labeled(double gamma) const;
};

/// round(gamma * n) draws from ell labeled 1 followed by the rest from g labeled 0.
ToySample toy_sample(const ToyMixture& toy, std::size_t n, std::uint64_t seed);

}  // namespace bore

#endif  // BORE_KDE_HPP
