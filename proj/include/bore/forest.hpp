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

#ifndef BORE_FOREST_HPP
#define BORE_FOREST_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bore/classifier.hpp"

namespace bore {

struct ForestConfig {
  int n_trees = 100;
  int min_samples_split = 2;
  /// Unset grows trees until leaves are pure or smaller than min_samples_split.
  std::optional<int> max_depth;
  bool bootstrap = true;
  /// Unset considers every feature at each split; otherwise a random subset of this size.
  std::optional<int> features_per_split;
  std::uint64_t seed = 0;

  void validate() const;
};

enum class CalibrationMethod { none, platt, isotonic };

CalibrationMethod parse_calibration(const std::string& name);
std::string to_string(CalibrationMethod method);

/// A CART tree over raw domain coordinates. Leaves store the fraction of
/// positive training labels that reached them.
class DecisionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::vector<char> goes_left;  // categorical splits: membership by code
    int left = -1;
    int right = -1;
    double value = 0.0;
  };

  double predict(std::span<const double> x) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t leaf_count() const;

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
};

class RandomForest {
 public:
  RandomForest() = default;

  static RandomForest fit(const SearchSpace& space, const LabeledSet& data,
                          const ForestConfig& config);

  /// Mean of the per-tree leaf fractions.
  double predict(std::span<const double> x) const;
  const std::vector<DecisionTree>& trees() const { return trees_; }
  std::size_t input_dim() const { return dim_; }

  /// Per-sample mean over the trees whose bootstrap left that sample out;
  /// nullopt for samples that every tree saw.
  const std::vector<std::optional<double>>& out_of_bag() const { return oob_; }

 private:
  std::vector<DecisionTree> trees_;
  std::vector<std::optional<double>> oob_;
  std::size_t dim_ = 0;
};

RandomForest forest_fit(const SearchSpace& space, const LabeledSet& data,
                        const ForestConfig& config);
double forest_predict(const RandomForest& forest, const Point& x);

struct PlattScaling {
  double a = 1.0;
  double b = 0.0;

  double operator()(double score) const;
};

/// Minimizes the logistic loss of sigmoid(a * s + b) with damped Newton steps.
PlattScaling platt_fit(std::span<const double> scores, std::span<const int> labels);

/// Nondecreasing step function produced by pool-adjacent-violators.
struct IsotonicFit {
  std::vector<double> knots;   // strictly increasing distinct scores
  std::vector<double> values;  // fitted value at each knot

  /// Value of the last knot at or below `score`; the first value below the range.
  double operator()(double score) const;
};

IsotonicFit isotonic_fit(std::span<const double> scores, std::span<const int> labels);

/// Random-forest classifier with optional post-hoc calibration fitted on
/// out-of-bag scores.
class ForestClassifier : public ProbabilisticClassifier {
 public:
  ForestClassifier(SearchSpace space, ForestConfig config,
                   CalibrationMethod calibration = CalibrationMethod::none);

  void fit(const LabeledSet& data) override;
  double predict(const Point& x) const override;

  /// Uncalibrated forest output.
  double raw_score(const Point& x) const;
  const RandomForest& forest() const { return forest_; }
  CalibrationMethod calibration() const { return calibration_; }
  const std::optional<PlattScaling>& platt() const { return platt_; }
  const std::optional<IsotonicFit>& isotonic() const { return isotonic_; }

 private:
  SearchSpace space_;
  ForestConfig config_;
  CalibrationMethod calibration_;
  RandomForest forest_;
  std::optional<PlattScaling> platt_;
  std::optional<IsotonicFit> isotonic_;
  std::size_t fits_ = 0;
};

}  // namespace bore

#endif  // BORE_FOREST_HPP
