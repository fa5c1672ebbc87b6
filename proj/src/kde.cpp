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

#include "bore/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "bore/ratio.hpp"

namespace bore {

double kde_bandwidth(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw DomainError("bandwidth needs at least two samples");
  }
  const auto n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) {
    throw DomainError("bandwidth undefined for identical samples");
  }
  return sd * std::pow(4.0 / (3.0 * n), 0.2);
}

Kde::Kde(std::vector<Point> centers, std::vector<double> bandwidths)
    : centers_(std::move(centers)), bandwidths_(std::move(bandwidths)) {
  if (centers_.empty()) throw DomainError("KDE needs at least one center");
  for (const Point& c : centers_) {
    if (c.size() != bandwidths_.size()) throw DomainError("KDE center dimension mismatch");
  }
  for (double h : bandwidths_) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("KDE bandwidths must be positive");
  }
}

Kde Kde::fit(std::vector<Point> samples) {
  if (samples.empty()) throw DomainError("KDE needs samples");
  const std::size_t dim = samples.front().size();
  std::vector<double> bandwidths(dim);
  std::vector<double> column(samples.size());
  for (std::size_t d = 0; d < dim; ++d) {
    for (std::size_t i = 0; i < samples.size(); ++i) column[i] = samples[i][d];
    bandwidths[d] = kde_bandwidth(column);
  }
  return Kde(std::move(samples), std::move(bandwidths));
}

double Kde::pdf(std::span<const double> x) const {
  if (x.size() != bandwidths_.size()) throw DomainError("KDE query dimension mismatch");
  double sum = 0.0;
  for (const Point& c : centers_) {
    double k = 1.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
      k *= normal_pdf((x[d] - c[d]) / bandwidths_[d]) / bandwidths_[d];
    }
    sum += k;
  }
  return sum / static_cast<double>(centers_.size());
}

Point Kde::sample(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, centers_.size() - 1);
  Point x = centers_[pick(rng)];
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t d = 0; d < x.size(); ++d) x[d] += bandwidths_[d] * noise(rng);
  return x;
}

double kde_pdf(const Kde& kde, std::span<const double> x) { return kde.pdf(x); }

ParzenDensity::ParzenDensity(const SearchSpace& space, std::span<const Point> samples,
                             double prior_weight)
    : space_(space), prior_weight_(prior_weight) {
  if (samples.empty()) throw DomainError("Parzen density needs samples");
  if (!(prior_weight >= 0.0)) throw DomainError("prior weight must be nonnegative");
  for (std::size_t d = 0; d < space.size(); ++d) {
    (space[d].is_categorical() ? categorical_dims_ : numeric_dims_).push_back(d);
  }
  centers_.reserve(samples.size());
  for (const Point& s : samples) {
    Point c;
    for (std::size_t d : numeric_dims_) c.push_back(s[d]);
    centers_.push_back(std::move(c));
  }
  std::vector<double> column(samples.size());
  for (std::size_t k = 0; k < numeric_dims_.size(); ++k) {
    const Dimension& dim = space[numeric_dims_[k]];
    for (std::size_t i = 0; i < samples.size(); ++i) column[i] = centers_[i][k];
    // Floor keeps the estimate proper when the samples coincide.
    const double floor = (dim.upper() - dim.lower()) / std::min(100.0, samples.size() + 1.0);
    double h = floor;
    try {
      h = std::max(kde_bandwidth(column), floor);
    } catch (const DomainError&) {
    }
    bandwidths_.push_back(h);
    prior_center_.push_back(0.5 * (dim.lower() + dim.upper()));
    prior_bandwidths_.push_back(dim.upper() - dim.lower());
  }
  for (std::size_t d : categorical_dims_) {
    const auto arity = static_cast<std::size_t>(space[d].arity());
    std::vector<double> freq(arity, 1.0);
    for (const Point& s : samples) freq[static_cast<std::size_t>(space[d].snap(s[d]))] += 1.0;
    const double total = static_cast<double>(samples.size() + arity);
    for (double& f : freq) f /= total;
    frequencies_.push_back(std::move(freq));
  }
}

double ParzenDensity::pdf(std::span<const double> x) const {
  double numeric = 1.0;
  if (!numeric_dims_.empty()) {
    double sum = 0.0;
    for (const Point& c : centers_) {
      double k = 1.0;
      for (std::size_t j = 0; j < numeric_dims_.size(); ++j) {
        k *= normal_pdf((x[numeric_dims_[j]] - c[j]) / bandwidths_[j]) / bandwidths_[j];
      }
      sum += k;
    }
    if (prior_weight_ > 0.0) {
      double k = 1.0;
      for (std::size_t j = 0; j < numeric_dims_.size(); ++j) {
        k *= normal_pdf((x[numeric_dims_[j]] - prior_center_[j]) / prior_bandwidths_[j]) /
             prior_bandwidths_[j];
      }
      sum += prior_weight_ * k;
    }
    numeric = sum / (static_cast<double>(centers_.size()) + prior_weight_);
  }
  double categorical = 1.0;
  for (std::size_t j = 0; j < categorical_dims_.size(); ++j) {
    const std::size_t d = categorical_dims_[j];
    categorical *= frequencies_[j][static_cast<std::size_t>(space_[d].snap(x[d]))];
  }
  return numeric * categorical;
}

Point ParzenDensity::sample(Rng& rng) const {
  Point x(space_.size(), 0.0);
  if (!numeric_dims_.empty()) {
    const double total = static_cast<double>(centers_.size()) + prior_weight_;
    const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    const auto index = static_cast<std::size_t>(u);
    const bool from_prior = index >= centers_.size();
    const Point& c = from_prior ? prior_center_ : centers_[index];
    const std::vector<double>& h = from_prior ? prior_bandwidths_ : bandwidths_;
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t j = 0; j < numeric_dims_.size(); ++j) {
      x[numeric_dims_[j]] = c[j] + h[j] * noise(rng);
    }
  }
  for (std::size_t j = 0; j < categorical_dims_.size(); ++j) {
    const std::vector<double>& freq = frequencies_[j];
    std::discrete_distribution<int> pick(freq.begin(), freq.end());
    x[categorical_dims_[j]] = static_cast<double>(pick(rng));
  }
  return space_.snap(x);
}

Point tpe_suggest(const SearchSpace& space, const ObservationSet& obs, const TpeOptions& options) {
  if (options.candidates < 1) throw DomainError("TPE needs at least one candidate");
  const LabeledSet labeled = assign_labels(obs, options.gamma);
  std::vector<Point> good;
  std::vector<Point> bad;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    (labeled.zs[i] == 1 ? good : bad).push_back(labeled.xs[i]);
  }
  if (good.size() < 2 || bad.size() < 2) {
    throw DomainError("TPE needs at least two points in each class");
  }
  const ParzenDensity ell(space, good, options.prior_weight);
  const ParzenDensity g(space, bad, options.prior_weight);
  Rng rng = make_rng(options.seed, 0x747065);
  Point best;
  double best_score = -1.0;
  for (std::size_t i = 0; i < options.candidates; ++i) {
    Point candidate = ell.sample(rng);
    const double score = ell.pdf(candidate) / (g.pdf(candidate) + 1e-12);
    if (score > best_score) {
      best_score = score;
      best = std::move(candidate);
    }
  }
  return best;
}

void ToyMixture::validate() const {
  double total = 0.0;
  for (const Component& c : ell) {
    if (!(c.weight >= 0.0) || !(c.stddev > 0.0)) throw DomainError("invalid mixture component");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to one");
  if (!(g.stddev > 0.0)) throw DomainError("invalid g component");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
}

double ToyMixture::ell_pdf(double x) const {
  double p = 0.0;
  for (const Component& c : ell) p += c.weight * normal_pdf((x - c.mean) / c.stddev) / c.stddev;
  return p;
}

double ToyMixture::g_pdf(double x) const {
  return normal_pdf((x - g.mean) / g.stddev) / g.stddev;
}

double toy_true_ratio(const ToyMixture& toy, double x, double gamma) {
  return relative_ratio(toy.ell_pdf(x), toy.g_pdf(x), gamma);
}

LabeledSet ToySample::labeled(double gamma) const {
  LabeledSet out;
  out.gamma = gamma;
  out.zs = zs;
  out.xs.reserve(xs.size());
  for (double x : xs) out.xs.push_back(Point{x});
  return out;
}

ToySample toy_sample(const ToyMixture& toy, std::size_t n, std::uint64_t seed) {
  toy.validate();
  if (n < 2) throw DomainError("toy sample needs n >= 2");
  Rng rng = make_rng(seed, 0x746f79);
  const auto n_pos = static_cast<std::size_t>(std::llround(toy.gamma * static_cast<double>(n)));
  std::vector<double> weights;
  for (const auto& c : toy.ell) weights.push_back(c.weight);
  std::discrete_distribution<std::size_t> component(weights.begin(), weights.end());
  std::normal_distribution<double> unit(0.0, 1.0);
  ToySample out;
  out.xs.reserve(n);
  out.zs.reserve(n);
  for (std::size_t i = 0; i < n_pos; ++i) {
    const auto& c = toy.ell[component(rng)];
    out.xs.push_back(c.mean + c.stddev * unit(rng));
    out.zs.push_back(1);
  }
  for (std::size_t i = n_pos; i < n; ++i) {
    out.xs.push_back(toy.g.mean + toy.g.stddev * unit(rng));
    out.zs.push_back(0);
  }
  return out;
}

}  // namespace bore
