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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bore/kde.hpp"
#include "bore/mlp.hpp"

namespace bore {
namespace {

SearchSpace line(double lo = 0.0, double hi = 1.0) {
  return SearchSpace({Dimension::continuous(lo, hi)});
}

LabeledSet make_set(std::vector<Point> xs, std::vector<int> zs) {
  LabeledSet s;
  s.xs = std::move(xs);
  s.zs = std::move(zs);
  return s;
}

// Randomizes every parameter, including the (normally zero) output layer.
void randomize(MlpClassifier& clf, std::uint64_t seed, double scale = 0.8) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<double> flat = clf.parameters().flatten();
  for (double& v : flat) v = normal(rng);
  MlpParameters p = clf.parameters();
  p.assign(flat);
  clf.set_parameters(p);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

TEST(MlpConfig, Validation) {
  MlpConfig c;
  EXPECT_NO_THROW(c.validate());
  c.hidden_widths.clear();
  EXPECT_THROW(c.validate(), DomainError);
  c = MlpConfig{};
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = MlpConfig{};
  c.steps_per_iteration = 0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(MlpConfig, ActivationDependsOnInputDimension) {
  MlpConfig c;
  EXPECT_EQ(c.resolved_activation(1), Activation::elu);
  EXPECT_EQ(c.resolved_activation(2), Activation::elu);
  EXPECT_EQ(c.resolved_activation(3), Activation::relu);
  c.activation = Activation::elu;
  EXPECT_EQ(c.resolved_activation(5), Activation::elu);
}

TEST(MlpPredict, InitialOutputIsOneHalf) {
  const SearchSpace space({Dimension::continuous(-2, 2), Dimension::categorical(3),
                           Dimension::ordinal({1, 2, 5})});
  MlpClassifier clf(FeatureEncoder(space), MlpConfig{});
  Rng rng(0);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(mlp_predict(clf, space.sample(rng)), 0.5);
}

TEST(MlpPredict, DeterministicAndInsideUnitInterval) {
  MlpClassifier clf(FeatureEncoder(line()), MlpConfig{});
  randomize(clf, 3, 5.0);
  for (double x = 0.0; x <= 1.0; x += 0.05) {
    const double p = clf.predict({x});
    EXPECT_EQ(p, clf.predict({x}));
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
  }
}

TEST(MlpPredict, DimensionMismatch) {
  MlpClassifier clf(FeatureEncoder(line()), MlpConfig{});
  EXPECT_THROW(clf.predict({0.1, 0.2}), DomainError);
}

TEST(MlpPredict, SameSeedSameInitialization) {
  MlpConfig c;
  c.seed = 12;
  MlpClassifier a(FeatureEncoder(line()), c);
  MlpClassifier b(FeatureEncoder(line()), c);
  EXPECT_EQ(a.parameters().flatten(), b.parameters().flatten());
  c.seed = 13;
  MlpClassifier d(FeatureEncoder(line()), c);
  EXPECT_NE(a.parameters().flatten(), d.parameters().flatten());
}

TEST(LogLoss, Examples) {
  MlpClassifier flat(FeatureEncoder(line()), MlpConfig{});
  EXPECT_NEAR(log_loss(flat, make_set({{0.2}, {0.7}}, {1, 0})), std::log(2.0), 1e-15);

  // Output layer zero apart from the bias fixes pi at sigmoid(bias).
  MlpParameters p = flat.parameters();
  p.layers.back().bias[0] = std::log(0.9 / 0.1);
  MlpClassifier nine(FeatureEncoder(line()), MlpConfig{}, p);
  EXPECT_NEAR(nine.predict({0.4}), 0.9, 1e-15);
  EXPECT_NEAR(log_loss(nine, make_set({{0.4}}, {1})), 0.10536051565782628, 1e-12);

  p.layers.back().bias[0] = 40.0;
  MlpClassifier sure(FeatureEncoder(line()), MlpConfig{}, p);
  EXPECT_LT(log_loss(sure, make_set({{0.4}}, {1})), 1e-15);
  EXPECT_GE(log_loss(sure, make_set({{0.4}}, {1})), 0.0);

  EXPECT_THROW(log_loss(flat, LabeledSet{}), DomainError);
}

TEST(LogLoss, WrongConfidenceIsFinite) {
  MlpClassifier flat(FeatureEncoder(line()), MlpConfig{});
  MlpParameters p = flat.parameters();
  p.layers.back().bias[0] = 800.0;
  MlpClassifier sure(FeatureEncoder(line()), MlpConfig{}, p);
  const double loss = log_loss(sure, make_set({{0.4}}, {0}));
  EXPECT_TRUE(std::isfinite(loss));
  EXPECT_NEAR(loss, 800.0, 1e-9);
}

// Central differences of the loss in every parameter.
std::vector<double> finite_difference(const MlpClassifier& clf, const LabeledSet& batch) {
  const std::vector<double> theta = clf.parameters().flatten();
  std::vector<double> fd(theta.size());
  MlpClassifier probe = clf;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double h = 1e-5 * std::max(1.0, std::abs(theta[i]));
    std::vector<double> t = theta;
    MlpParameters p = clf.parameters();
    t[i] = theta[i] + h;
    p.assign(t);
    probe.set_parameters(p);
    const double up = probe.log_loss(batch);
    t[i] = theta[i] - h;
    p.assign(t);
    probe.set_parameters(p);
    const double down = probe.log_loss(batch);
    fd[i] = (up - down) / (2.0 * h);
  }
  return fd;
}

double max_relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return diff / scale;
}

TEST(MlpGradient, MatchesFiniteDifferencesOverRandomConfigs) {
  Rng rng(77);
  std::uniform_int_distribution<int> width(1, 9);
  std::uniform_int_distribution<int> depth(1, 3);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Dimension> dims{Dimension::continuous(-3.0, 2.0)};
    if (trial % 3 == 1) dims.push_back(Dimension::categorical(3));
    if (trial % 3 == 2) dims.push_back(Dimension::ordinal({0.5, 1.0, 4.0}));
    if (trial % 4 == 3) dims.push_back(Dimension::continuous(0.0, 10.0));
    const SearchSpace space(dims);
    MlpConfig c;
    c.hidden_widths.clear();
    for (int d = depth(rng); d > 0; --d) c.hidden_widths.push_back(width(rng));
    c.activation = bit(rng) ? Activation::relu : Activation::elu;
    c.seed = trial;
    MlpClassifier clf(FeatureEncoder(space), c);
    randomize(clf, 1000 + trial);

    LabeledSet batch;
    for (int i = 0; i < 5; ++i) {
      batch.xs.push_back(space.sample(rng));
      batch.zs.push_back(bit(rng));
    }
    const std::vector<double> analytic = mlp_gradient(clf, batch).flatten();
    const std::vector<double> numeric = finite_difference(clf, batch);
    EXPECT_LT(max_relative_error(analytic, numeric), 1e-4) << "trial " << trial;
  }
}

TEST(MlpGradient, NearZeroAtConfidentCorrectFit) {
  MlpClassifier clf(FeatureEncoder(line()), MlpConfig{});
  MlpParameters p = clf.parameters();
  p.layers.back().bias[0] = 40.0;
  clf.set_parameters(p);
  const LabeledSet batch = make_set({{0.1}, {0.5}, {0.9}}, {1, 1, 1});
  double norm = 0.0;
  for (double g : mlp_gradient(clf, batch).flatten()) norm += g * g;
  EXPECT_LT(std::sqrt(norm), 1e-12);
}

TEST(MlpGradient, DuplicatedBatchGivesSameGradient) {
  MlpClassifier clf(FeatureEncoder(line()), MlpConfig{});
  randomize(clf, 5);
  const LabeledSet once = make_set({{0.1}, {0.5}, {0.9}}, {1, 0, 1});
  const LabeledSet twice = make_set({{0.1}, {0.5}, {0.9}, {0.1}, {0.5}, {0.9}}, {1, 0, 1, 1, 0, 1});
  const std::vector<double> a = mlp_gradient(clf, once).flatten();
  const std::vector<double> b = mlp_gradient(clf, twice).flatten();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-14);
}

TEST(MlpInputGradient, MatchesFiniteDifferences) {
  const SearchSpace space({Dimension::continuous(-3.0, 2.0), Dimension::continuous(0.0, 10.0)});
  for (Activation act : {Activation::relu, Activation::elu}) {
    MlpConfig c;
    c.activation = act;
    MlpClassifier clf(FeatureEncoder(space), c);
    randomize(clf, 9);
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
      Point x = space.sample(rng);
      std::vector<double> grad(2);
      const double value = clf.predict_with_gradient(x, grad);
      EXPECT_EQ(value, clf.predict(x));
      for (int d = 0; d < 2; ++d) {
        const double h = 1e-6 * (space[d].upper() - space[d].lower());
        Point up = x, down = x;
        up[d] += h;
        down[d] -= h;
        const double fd = (clf.predict(up) - clf.predict(down)) / (2.0 * h);
        EXPECT_NEAR(grad[d], fd, 1e-6 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST(EpochSchedule, Examples) {
  EpochSchedule a = epochs_for_iteration(800, 64, 512);
  EXPECT_EQ(a.steps_per_epoch, 8u);
  EXPECT_EQ(a.epochs, 100u);
  EpochSchedule b = epochs_for_iteration(800, 64, 32);
  EXPECT_EQ(b.steps_per_epoch, 1u);
  EXPECT_EQ(b.epochs, 800u);
  EpochSchedule c = epochs_for_iteration(100, 64, 64);
  EXPECT_EQ(c.steps_per_epoch, 1u);
  EXPECT_EQ(c.epochs, 100u);
  EXPECT_THROW(epochs_for_iteration(0, 64, 10), DomainError);
}

TEST(EpochSchedule, MatchesDirectFormula) {
  for (std::size_t s = 1; s < 300; s += 7) {
    for (std::size_t b = 1; b < 100; b += 9) {
      for (std::size_t n = 1; n < 500; n += 13) {
        const std::size_t m = (n + b - 1) / b;
        const EpochSchedule e = epochs_for_iteration(s, b, n);
        EXPECT_EQ(e.steps_per_epoch, m);
        EXPECT_EQ(e.epochs, s / m);
      }
    }
  }
}

TEST(MlpFit, RejectsSingleClass) {
  MlpClassifier clf(FeatureEncoder(line()), MlpConfig{});
  EXPECT_THROW(mlp_fit(clf, make_set({{0.1}, {0.2}}, {1, 1})), DomainError);
  EXPECT_THROW(mlp_fit(clf, make_set({{0.1}, {0.2}}, {0, 0})), DomainError);
}

TEST(MlpFit, RunsExactlyTheConfiguredSteps) {
  MlpConfig c;
  c.steps_per_iteration = 37;
  MlpClassifier clf(FeatureEncoder(line()), c);
  const FitReport r = mlp_fit(clf, make_set({{0.1}, {0.9}}, {1, 0}));
  EXPECT_EQ(r.steps, 37u);
  EXPECT_NEAR(r.initial_loss, std::log(2.0), 1e-15);
}

TEST(MlpFit, SeparatesTwoClusters) {
  LabeledSet data;
  Rng rng(1);
  std::normal_distribution<double> noise(0.0, 0.03);
  for (int i = 0; i < 40; ++i) {
    data.xs.push_back({0.2 + noise(rng)});
    data.zs.push_back(1);
    data.xs.push_back({0.8 + noise(rng)});
    data.zs.push_back(0);
  }
  MlpConfig c;
  c.steps_per_iteration = 500;
  MlpClassifier clf(FeatureEncoder(line()), c);
  mlp_fit(clf, data);
  for (std::size_t i = 0; i < data.size(); ++i) {
    EXPECT_EQ(clf.predict(data.xs[i]) > 0.5 ? 1 : 0, data.zs[i]);
  }
}

TEST(MlpFit, BitwiseDeterministic) {
  const ToySample s = toy_sample(ToyMixture{}, 200, 3);
  const LabeledSet data = s.labeled(0.25);
  MlpConfig c;
  c.seed = 5;
  MlpClassifier a(FeatureEncoder(line(-6, 6)), c);
  MlpClassifier b(FeatureEncoder(line(-6, 6)), c);
  for (int round = 0; round < 3; ++round) {
    a.fit(data);
    b.fit(data);
    EXPECT_EQ(a.parameters().flatten(), b.parameters().flatten());
  }
}

TEST(MlpFit, MedianLossDecreasesOverSeeds) {
  std::vector<double> initial, final_loss;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LabeledSet data = toy_sample(ToyMixture{}, 300, seed).labeled(0.25);
    MlpConfig c;
    c.seed = seed;
    MlpClassifier clf(FeatureEncoder(line(-6, 6)), c);
    const FitReport r = mlp_fit(clf, data);
    initial.push_back(r.initial_loss);
    final_loss.push_back(r.final_loss);
    EXPECT_NEAR(r.final_loss, clf.log_loss(data), 1e-12);
  }
  EXPECT_LE(median(final_loss), median(initial));
}

TEST(MlpFit, WarmStartContinuesFromCurrentParameters) {
  const LabeledSet data = toy_sample(ToyMixture{}, 300, 1).labeled(0.25);
  MlpClassifier clf(FeatureEncoder(line(-6, 6)), MlpConfig{});
  const FitReport first = mlp_fit(clf, data);
  const FitReport second = mlp_fit(clf, data);
  EXPECT_EQ(second.initial_loss, first.final_loss);
}

TEST(MlpFit, ToyMixtureBeatsUniformPredictor) {
  const LabeledSet data = toy_sample(ToyMixture{}, 1000, 0).labeled(0.25);
  MlpConfig c;
  c.steps_per_iteration = 2000;
  MlpClassifier clf(FeatureEncoder(line(-6, 6)), c);
  mlp_fit(clf, data);
  EXPECT_LT(clf.log_loss(data), std::log(2.0));
}

TEST(MlpFit, ToyMixturePosteriorNearOracleAtMinusThree) {
  const ToyMixture toy;
  const LabeledSet data = toy_sample(toy, 1000, 0).labeled(0.25);
  MlpConfig c;
  c.steps_per_iteration = 10000;
  MlpClassifier clf(FeatureEncoder(line(-6, 6)), c);
  mlp_fit(clf, data);
  const double oracle = 0.25 * toy_true_ratio(toy, -3.0, 0.25);
  EXPECT_NEAR(clf.predict({-3.0}), oracle, 0.1);
}

TEST(MlpFit, RecoversBayesPosteriorOnTwoPointDomain) {
  // x = 0: 30 positives, 10 negatives; x = 1: 5 positives, 55 negatives.
  LabeledSet data;
  auto add = [&](double x, int z, int count) {
    for (int i = 0; i < count; ++i) {
      data.xs.push_back({x});
      data.zs.push_back(z);
    }
  };
  add(0.0, 1, 30);
  add(0.0, 0, 10);
  add(1.0, 1, 5);
  add(1.0, 0, 55);
  MlpConfig c;
  c.steps_per_iteration = 3000;
  MlpClassifier clf(FeatureEncoder(line()), c);
  mlp_fit(clf, data);
  EXPECT_NEAR(clf.predict({0.0}), 30.0 / 40.0, 0.02);
  EXPECT_NEAR(clf.predict({1.0}), 5.0 / 60.0, 0.02);
}

}  // namespace
}  // namespace bore
