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

#include "bore/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bore {

Dimension Dimension::continuous(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("continuous dimension needs finite lo < hi");
  }
  Dimension d;
  d.kind_ = Kind::continuous;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

Dimension Dimension::ordinal(std::vector<double> values) {
  if (values.size() < 2) {
    throw DomainError("ordinal dimension needs at least two values");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || (i > 0 && !(values[i - 1] < values[i]))) {
      throw DomainError("ordinal values must be finite and strictly increasing");
    }
  }
  Dimension d;
  d.kind_ = Kind::ordinal;
  d.lo_ = values.front();
  d.hi_ = values.back();
  d.values_ = std::move(values);
  return d;
}

Dimension Dimension::categorical(int arity) {
  if (arity < 2) {
    throw DomainError("categorical dimension needs arity >= 2");
  }
  Dimension d;
  d.kind_ = Kind::categorical;
  d.arity_ = arity;
  d.lo_ = 0.0;
  d.hi_ = static_cast<double>(arity - 1);
  return d;
}

double Dimension::lower() const { return lo_; }
double Dimension::upper() const { return hi_; }

bool Dimension::contains(double v) const {
  switch (kind_) {
    case Kind::continuous:
      return v >= lo_ && v <= hi_;
    case Kind::ordinal:
      return std::binary_search(values_.begin(), values_.end(), v);
    case Kind::categorical:
      return v >= 0.0 && v <= hi_ && v == std::floor(v);
  }
  return false;
}

double Dimension::snap(double v) const {
  switch (kind_) {
    case Kind::continuous:
      return std::clamp(v, lo_, hi_);
    case Kind::ordinal: {
      auto it = std::lower_bound(values_.begin(), values_.end(), v);
      if (it == values_.begin()) return values_.front();
      if (it == values_.end()) return values_.back();
      const double above = *it;
      const double below = *(it - 1);
      return (v - below <= above - v) ? below : above;
    }
    case Kind::categorical:
      return std::clamp(std::round(v), 0.0, hi_);
  }
  return v;
}

double Dimension::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::continuous:
      return std::uniform_real_distribution<double>(lo_, hi_)(rng);
    case Kind::ordinal: {
      std::uniform_int_distribution<std::size_t> pick(0, values_.size() - 1);
      return values_[pick(rng)];
    }
    case Kind::categorical: {
      std::uniform_int_distribution<int> pick(0, arity_ - 1);
      return static_cast<double>(pick(rng));
    }
  }
  return lo_;
}

SearchSpace::SearchSpace(std::vector<Dimension> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw DomainError("search space needs at least one dimension");
  }
}

bool SearchSpace::all_continuous() const {
  return std::all_of(dims_.begin(), dims_.end(),
                     [](const Dimension& d) { return d.is_continuous(); });
}

bool SearchSpace::contains(std::span<const double> x) const {
  if (x.size() != dims_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!dims_[i].contains(x[i])) return false;
  }
  return true;
}

Point SearchSpace::snap(std::span<const double> x) const {
  if (x.size() != dims_.size()) {
    throw DomainError("point has " + std::to_string(x.size()) + " coordinates, space has " +
                      std::to_string(dims_.size()));
  }
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = dims_[i].snap(x[i]);
  return out;
}

Point SearchSpace::sample(Rng& rng) const {
  Point x(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) x[i] = dims_[i].sample(rng);
  return x;
}

void ObservationSet::append(Point x, double y) {
  if (x.size() != dim_) {
    throw DomainError("observation dimension mismatch");
  }
  if (!std::isfinite(y) ||
      !std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
    throw DomainError("observations must be finite");
  }
  xs_.push_back(std::move(x));
  ys_.push_back(y);
}

std::size_t LabeledSet::positives() const {
  return static_cast<std::size_t>(std::count(zs.begin(), zs.end(), 1));
}

bool LabeledSet::has_both_classes() const {
  const std::size_t pos = positives();
  return pos > 0 && pos < zs.size();
}

double empirical_quantile(std::span<const double> ys, double gamma) {
  if (ys.empty()) {
    throw DomainError("quantile of an empty sample");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("gamma must lie in (0, 1)");
  }
  if (!std::all_of(ys.begin(), ys.end(), [](double v) { return std::isfinite(v); })) {
    throw DomainError("quantile of non-finite values");
  }
  const auto n = static_cast<double>(ys.size());
  // The 1e-9 slack keeps products such as 0.1 * 30 from rounding up a rank.
  auto k = static_cast<std::size_t>(std::ceil(gamma * n - 1e-9));
  k = std::clamp<std::size_t>(k, 1, ys.size());
  std::vector<double> sorted(ys.begin(), ys.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   sorted.end());
  return sorted[k - 1];
}

LabeledSet assign_labels(const ObservationSet& obs, double gamma) {
  LabeledSet out;
  out.tau = empirical_quantile(obs.ys(), gamma);
  out.gamma = gamma;
  out.xs = obs.xs();
  out.zs.reserve(obs.size());
  for (double y : obs.ys()) out.zs.push_back(y <= out.tau ? 1 : 0);
  return out;
}

std::vector<Point> uniform_sample(const SearchSpace& space, std::size_t count,
                                  std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(space.sample(rng));
  return out;
}

}  // namespace bore
