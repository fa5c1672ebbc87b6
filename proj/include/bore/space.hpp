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

#ifndef BORE_SPACE_HPP
#define BORE_SPACE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bore/common.hpp"

namespace bore {

/// One coordinate of the search domain.
class Dimension {
 public:
  enum class Kind { continuous, ordinal, categorical };

  static Dimension continuous(double lo, double hi);
  /// `values` must be strictly increasing with at least two entries.
  static Dimension ordinal(std::vector<double> values);
  static Dimension categorical(int arity);

  Kind kind() const { return kind_; }
  bool is_continuous() const { return kind_ == Kind::continuous; }
  bool is_categorical() const { return kind_ == Kind::categorical; }

  /// Smallest and largest admissible coordinate (codes 0..arity-1 for categorical).
  double lower() const;
  double upper() const;
  const std::vector<double>& values() const { return values_; }
  int arity() const { return arity_; }

  bool contains(double v) const;
  /// Nearest admissible value: clamps continuous, rounds ordinal to the closest
  /// allowed value and categorical to the closest code.
  double snap(double v) const;
  double sample(Rng& rng) const;

 private:
  Dimension() = default;

  Kind kind_ = Kind::continuous;
  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<double> values_;
  int arity_ = 0;
};

class SearchSpace {
 public:
  explicit SearchSpace(std::vector<Dimension> dims);

  std::size_t size() const { return dims_.size(); }
  const Dimension& operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<Dimension>& dims() const { return dims_; }

  bool all_continuous() const;
  bool contains(std::span<const double> x) const;
  Point snap(std::span<const double> x) const;
  Point sample(Rng& rng) const;

 private:
  std::vector<Dimension> dims_;
};

/// The dataset of (x, y) pairs collected so far; append-only.
class ObservationSet {
 public:
  explicit ObservationSet(std::size_t dim) : dim_(dim) {}

  void append(Point x, double y);

  std::size_t size() const { return ys_.size(); }
  std::size_t dim() const { return dim_; }
  bool empty() const { return ys_.empty(); }
  const std::vector<Point>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

 private:
  std::size_t dim_;
  std::vector<Point> xs_;
  std::vector<double> ys_;
};

/// Auxiliary classification data: z = 1 marks the points with y <= tau.
struct LabeledSet {
  std::vector<Point> xs;
  std::vector<int> zs;
  double tau = 0.0;
  double gamma = 0.0;

  std::size_t size() const { return zs.size(); }
  std::size_t positives() const;
  bool has_both_classes() const;
};

/// The k-th smallest of `ys` with k = ceil(gamma * N).
double empirical_quantile(std::span<const double> ys, double gamma);

LabeledSet assign_labels(const ObservationSet& obs, double gamma);

std::vector<Point> uniform_sample(const SearchSpace& space, std::size_t count,
                                  std::uint64_t seed);

}  // namespace bore

#endif  // BORE_SPACE_HPP
