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

#include "bore/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bore {

void ForestConfig::validate() const {
  if (n_trees < 1) throw DomainError("forest needs at least one tree");
  if (min_samples_split < 2) throw DomainError("min_samples_split must be at least 2");
  if (max_depth && *max_depth < 0) throw DomainError("max_depth must be nonnegative");
  if (features_per_split && *features_per_split < 1) {
    throw DomainError("features_per_split must be positive");
  }
}

CalibrationMethod parse_calibration(const std::string& name) {
  if (name == "none") return CalibrationMethod::none;
  if (name == "platt") return CalibrationMethod::platt;
  if (name == "isotonic") return CalibrationMethod::isotonic;
  throw DomainError("unknown calibration method '" + name + "'");
}

std::string to_string(CalibrationMethod method) {
  switch (method) {
    case CalibrationMethod::none:
      return "none";
    case CalibrationMethod::platt:
      return "platt";
    case CalibrationMethod::isotonic:
      return "isotonic";
  }
  return "none";
}

double DecisionTree::predict(std::span<const double> x) const {
  int id = 0;
  while (nodes_[id].feature >= 0) {
    const Node& node = nodes_[id];
    const double v = x[static_cast<std::size_t>(node.feature)];
    bool left;
    if (!node.goes_left.empty()) {
      const auto code = static_cast<std::size_t>(std::max(0.0, std::round(v)));
      left = code < node.goes_left.size() && node.goes_left[code] != 0;
    } else {
      left = v <= node.threshold;
    }
    id = left ? node.left : node.right;
  }
  return nodes_[id].value;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.feature < 0; }));
}

class TreeBuilder {
 public:
  TreeBuilder(const SearchSpace& space, const LabeledSet& data, const ForestConfig& config,
              Rng& rng)
      : space_(space), data_(data), config_(config), rng_(rng) {}

  DecisionTree build(std::vector<std::size_t> samples) {
    DecisionTree tree;
    tree_ = &tree;
    grow(samples, 0);
    return tree;
  }

 private:
  struct Split {
    double cost = 0.0;
    int feature = -1;
    double threshold = 0.0;
    std::vector<char> goes_left;
  };

  // Sum over children of n_child * gini(child); gini = 2 p (1 - p).
  static double child_cost(double n, double pos) {
    return n > 0.0 ? 2.0 * pos * (n - pos) / n : 0.0;
  }

  std::vector<std::size_t> candidate_features() {
    std::vector<std::size_t> features(space_.size());
    std::iota(features.begin(), features.end(), 0);
    if (config_.features_per_split &&
        static_cast<std::size_t>(*config_.features_per_split) < features.size()) {
      std::shuffle(features.begin(), features.end(), rng_);
      features.resize(static_cast<std::size_t>(*config_.features_per_split));
      std::sort(features.begin(), features.end());
    }
    return features;
  }

  void consider_threshold(std::size_t f, std::span<const std::size_t> samples, double total_pos,
                          Split& best) {
    std::vector<std::size_t> order(samples.begin(), samples.end());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return data_.xs[a][f] < data_.xs[b][f];
    });
    const double n = static_cast<double>(order.size());
    double left_pos = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      left_pos += data_.zs[order[i]];
      const double here = data_.xs[order[i]][f];
      const double next = data_.xs[order[i + 1]][f];
      if (!(here < next)) continue;
      const double left_n = static_cast<double>(i + 1);
      const double cost =
          child_cost(left_n, left_pos) + child_cost(n - left_n, total_pos - left_pos);
      if (best.feature < 0 || cost < best.cost - 1e-12) {
        double threshold = 0.5 * (here + next);
        if (!(threshold < next)) threshold = here;
        best = Split{cost, static_cast<int>(f), threshold, {}};
      }
    }
  }

  void consider_categories(std::size_t f, std::span<const std::size_t> samples,
                           double total_pos, Split& best) {
    const auto arity = static_cast<std::size_t>(space_[f].arity());
    std::vector<double> count(arity, 0.0);
    std::vector<double> pos(arity, 0.0);
    for (std::size_t s : samples) {
      const auto code = static_cast<std::size_t>(space_[f].snap(data_.xs[s][f]));
      count[code] += 1.0;
      pos[code] += data_.zs[s];
    }
    std::vector<std::size_t> present;
    for (std::size_t c = 0; c < arity; ++c) {
      if (count[c] > 0.0) present.push_back(c);
    }
    if (present.size() < 2) return;
    // Ordering categories by positive fraction makes prefix splits optimal for
    // binary Gini.
    std::stable_sort(present.begin(), present.end(), [&](std::size_t a, std::size_t b) {
      return pos[a] / count[a] < pos[b] / count[b];
    });
    const double n = static_cast<double>(samples.size());
    double left_n = 0.0;
    double left_pos = 0.0;
    for (std::size_t i = 0; i + 1 < present.size(); ++i) {
      left_n += count[present[i]];
      left_pos += pos[present[i]];
      const double cost =
          child_cost(left_n, left_pos) + child_cost(n - left_n, total_pos - left_pos);
      if (best.feature < 0 || cost < best.cost - 1e-12) {
        std::vector<char> mask(arity, 0);
        for (std::size_t j = 0; j <= i; ++j) mask[present[j]] = 1;
        best = Split{cost, static_cast<int>(f), static_cast<double>(i), std::move(mask)};
      }
    }
  }

  int grow(std::span<const std::size_t> samples, int depth) {
    const int id = static_cast<int>(tree_->nodes_.size());
    tree_->nodes_.emplace_back();
    double total_pos = 0.0;
    for (std::size_t s : samples) total_pos += data_.zs[s];
    const double n = static_cast<double>(samples.size());
    tree_->nodes_[id].value = total_pos / n;

    const bool pure = total_pos == 0.0 || total_pos == n;
    const bool too_small = samples.size() < static_cast<std::size_t>(config_.min_samples_split);
    const bool too_deep = config_.max_depth && depth >= *config_.max_depth;
    if (pure || too_small || too_deep) return id;

    Split best;
    for (std::size_t f : candidate_features()) {
      if (space_[f].is_categorical()) {
        consider_categories(f, samples, total_pos, best);
      } else {
        consider_threshold(f, samples, total_pos, best);
      }
    }
    if (best.feature < 0) return id;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    const auto f = static_cast<std::size_t>(best.feature);
    for (std::size_t s : samples) {
      bool go_left;
      if (!best.goes_left.empty()) {
        go_left = best.goes_left[static_cast<std::size_t>(space_[f].snap(data_.xs[s][f]))] != 0;
      } else {
        go_left = data_.xs[s][f] <= best.threshold;
      }
      (go_left ? left : right).push_back(s);
    }
    const int left_id = grow(left, depth + 1);
    const int right_id = grow(right, depth + 1);
    DecisionTree::Node& node = tree_->nodes_[id];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.goes_left = std::move(best.goes_left);
    node.left = left_id;
    node.right = right_id;
    return id;
  }

  const SearchSpace& space_;
  const LabeledSet& data_;
  const ForestConfig& config_;
  Rng& rng_;
  DecisionTree* tree_ = nullptr;
};

RandomForest RandomForest::fit(const SearchSpace& space, const LabeledSet& data,
                               const ForestConfig& config) {
  config.validate();
  if (!data.has_both_classes()) {
    throw DomainError("classifier training data must contain both classes");
  }
  for (const Point& x : data.xs) {
    if (x.size() != space.size()) throw DomainError("training point dimension mismatch");
  }
  const std::size_t n = data.size();
  RandomForest forest;
  forest.dim_ = space.size();
  std::vector<double> oob_sum(n, 0.0);
  std::vector<int> oob_count(n, 0);
  for (int t = 0; t < config.n_trees; ++t) {
    Rng rng = make_rng(config.seed, 0x7265650000ull + static_cast<std::uint64_t>(t));
    std::vector<std::size_t> samples(n);
    std::vector<char> in_bag(n, 0);
    if (config.bootstrap) {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t& s : samples) {
        s = pick(rng);
        in_bag[s] = 1;
      }
      std::sort(samples.begin(), samples.end());
    } else {
      std::iota(samples.begin(), samples.end(), 0);
      std::fill(in_bag.begin(), in_bag.end(), 1);
    }
    TreeBuilder builder(space, data, config, rng);
    forest.trees_.push_back(builder.build(std::move(samples)));
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_bag[i]) {
        oob_sum[i] += forest.trees_.back().predict(data.xs[i]);
        ++oob_count[i];
      }
    }
  }
  forest.oob_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (oob_count[i] > 0) forest.oob_[i] = oob_sum[i] / oob_count[i];
  }
  return forest;
}

double RandomForest::predict(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw DomainError("point dimension does not match the forest");
  }
  double sum = 0.0;
  for (const DecisionTree& tree : trees_) sum += tree.predict(x);
  return sum / static_cast<double>(trees_.size());
}

RandomForest forest_fit(const SearchSpace& space, const LabeledSet& data,
                        const ForestConfig& config) {
  return RandomForest::fit(space, data, config);
}

double forest_predict(const RandomForest& forest, const Point& x) { return forest.predict(x); }

double PlattScaling::operator()(double score) const { return sigmoid(a * score + b); }

namespace {

double platt_loss(std::span<const double> s, std::span<const int> z, double a, double b) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = a * s[i] + b;
    total += std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t))) - (z[i] == 1 ? t : 0.0);
  }
  return total / static_cast<double>(s.size());
}

}  // namespace

PlattScaling platt_fit(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size() || scores.size() < 2) {
    throw DomainError("Platt scaling needs matching scores and labels, at least two");
  }
  const auto pos = static_cast<double>(std::count(labels.begin(), labels.end(), 1));
  const auto n = static_cast<double>(labels.size());
  if (pos == 0.0 || pos == n) {
    throw DomainError("Platt scaling needs both classes");
  }
  double a = 0.0;
  double b = std::log(pos / (n - pos));
  double loss = platt_loss(scores, labels, a, b);
  for (int iter = 0; iter < 1000; ++iter) {
    double ga = 0.0, gb = 0.0, haa = 0.0, hab = 0.0, hbb = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const double p = sigmoid(a * scores[i] + b);
      const double r = p - labels[i];
      const double w = p * (1.0 - p);
      ga += r * scores[i];
      gb += r;
      haa += w * scores[i] * scores[i];
      hab += w * scores[i];
      hbb += w;
    }
    ga /= n, gb /= n, haa /= n, hab /= n, hbb /= n;
    if (std::hypot(ga, gb) < 1e-6) break;
    // Levenberg damping keeps the system solvable when scores are constant.
    const double damping = 1e-10 + 1e-6 * (haa + hbb);
    haa += damping;
    hbb += damping;
    const double det = haa * hbb - hab * hab;
    double da = -(hbb * ga - hab * gb) / det;
    double db = -(haa * gb - hab * ga) / det;
    double step = 1.0;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      const double trial = platt_loss(scores, labels, a + step * da, b + step * db);
      if (trial <= loss - 1e-4 * step * -(ga * da + gb * db)) {
        a += step * da;
        b += step * db;
        loss = trial;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return {a, b};
}

double IsotonicFit::operator()(double score) const {
  if (knots.empty()) return 0.0;
  auto it = std::upper_bound(knots.begin(), knots.end(), score);
  if (it == knots.begin()) return values.front();
  return values[static_cast<std::size_t>(it - knots.begin()) - 1];
}

IsotonicFit isotonic_fit(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size() || scores.empty()) {
    throw DomainError("isotonic regression needs matching, non-empty scores and labels");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return scores[i] < scores[j]; });

  struct Block {
    double weight;
    double mean;
    std::size_t knots;  // distinct scores pooled into this block
  };
  std::vector<double> knots;
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < order.size();) {
    // Pool equal scores first.
    std::size_t j = i;
    double sum = 0.0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      sum += labels[order[j]];
      ++j;
    }
    const auto w = static_cast<double>(j - i);
    knots.push_back(scores[order[i]]);
    blocks.push_back({w, sum / w, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean > blocks.back().mean) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / (prev.weight + top.weight);
      prev.weight += top.weight;
      prev.knots += top.knots;
    }
    i = j;
  }
  IsotonicFit fit;
  fit.knots = std::move(knots);
  fit.values.reserve(fit.knots.size());
  for (const Block& b : blocks) fit.values.insert(fit.values.end(), b.knots, b.mean);
  return fit;
}

ForestClassifier::ForestClassifier(SearchSpace space, ForestConfig config,
                                   CalibrationMethod calibration)
    : space_(std::move(space)), config_(config), calibration_(calibration) {
  config_.validate();
}

void ForestClassifier::fit(const LabeledSet& data) {
  ForestConfig config = config_;
  config.seed = config_.seed + 0x9e3779b97f4a7c15ull * fits_;
  ++fits_;
  forest_ = RandomForest::fit(space_, data, config);
  platt_.reset();
  isotonic_.reset();
  if (calibration_ == CalibrationMethod::none) return;

  std::vector<double> scores;
  std::vector<int> labels;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (forest_.out_of_bag()[i]) {
      scores.push_back(*forest_.out_of_bag()[i]);
      labels.push_back(data.zs[i]);
    }
  }
  const auto pos = std::count(labels.begin(), labels.end(), 1);
  const bool usable = labels.size() >= 2 && pos > 0 && pos < static_cast<long>(labels.size());
  if (!usable) {
    // Not enough out-of-bag coverage: calibrate on in-bag scores instead.
    scores.clear();
    for (const Point& x : data.xs) scores.push_back(forest_.predict(x));
    labels = data.zs;
  }
  if (calibration_ == CalibrationMethod::platt) {
    platt_ = platt_fit(scores, labels);
  } else {
    isotonic_ = isotonic_fit(scores, labels);
  }
}

double ForestClassifier::raw_score(const Point& x) const { return forest_.predict(x); }

double ForestClassifier::predict(const Point& x) const {
  const double s = forest_.predict(x);
  if (platt_) return (*platt_)(s);
  if (isotonic_) return (*isotonic_)(s);
  return s;
}

}  // namespace bore
