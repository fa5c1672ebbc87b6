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

#ifndef BORE_CLASSIFIER_HPP
#define BORE_CLASSIFIER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "bore/common.hpp"
#include "bore/space.hpp"

namespace bore {

/// A model of P(z = 1 | x) trained on a LabeledSet.
class ProbabilisticClassifier {
 public:
  virtual ~ProbabilisticClassifier() = default;

  /// Trains on `data`; both classes must be present.
  virtual void fit(const LabeledSet& data) = 0;
  virtual double predict(const Point& x) const = 0;

  /// True when predict_with_gradient is available.
  virtual bool differentiable() const { return false; }
  /// Returns predict(x) and writes d predict / d x into `grad` (raw coordinates).
  virtual double predict_with_gradient(const Point& x, std::span<double> grad) const;
};

/// Maps domain points to classifier features: continuous and ordinal
/// coordinates min-max scaled to [0, 1], categorical ones one-hot encoded.
class FeatureEncoder {
 public:
  explicit FeatureEncoder(SearchSpace space);

  const SearchSpace& space() const { return space_; }
  std::size_t input_dim() const { return space_.size(); }
  std::size_t feature_dim() const { return feature_dim_; }

  void encode(std::span<const double> x, std::span<double> out) const;
  std::vector<double> encode(std::span<const double> x) const;

  /// d feature / d x for a continuous or ordinal coordinate (zero otherwise).
  double scale(std::size_t input_index) const { return scales_[input_index]; }
  std::size_t offset(std::size_t input_index) const { return offsets_[input_index]; }

 private:
  SearchSpace space_;
  std::vector<std::size_t> offsets_;
  std::vector<double> scales_;
  std::size_t feature_dim_ = 0;
};

}  // namespace bore

#endif  // BORE_CLASSIFIER_HPP
