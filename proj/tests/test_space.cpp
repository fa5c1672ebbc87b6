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
#include <numeric>
#include <random>

#include "bore/space.hpp"

namespace bore {
namespace {

ObservationSet make_obs(const std::vector<double>& ys) {
  ObservationSet obs(1);
  for (std::size_t i = 0; i < ys.size(); ++i) obs.append({static_cast<double>(i)}, ys[i]);
  return obs;
}

// Labels by brute force: count how many values are <= y and compare with the
// required number of positives.
std::vector<int> oracle_labels(const std::vector<double>& ys, double gamma) {
  std::vector<double> sorted = ys;
  std::sort(sorted.begin(), sorted.end());
  std::size_t k = 1;
  while (static_cast<double>(k) < gamma * ys.size() - 1e-9) ++k;
  const double tau = sorted[k - 1];
  std::vector<int> zs;
  for (double y : ys) zs.push_back(y <= tau ? 1 : 0);
  return zs;
}

TEST(Dimension, RejectsInvalidDefinitions) {
  EXPECT_THROW(Dimension::continuous(1.0, 1.0), DomainError);
  EXPECT_THROW(Dimension::continuous(0.0, INFINITY), DomainError);
  EXPECT_THROW(Dimension::ordinal({1.0}), DomainError);
  EXPECT_THROW(Dimension::ordinal({1.0, 1.0}), DomainError);
  EXPECT_THROW(Dimension::categorical(1), DomainError);
  EXPECT_THROW(SearchSpace({}), DomainError);
}

TEST(Dimension, SnapRoundsToAdmissibleValues) {
  EXPECT_DOUBLE_EQ(Dimension::continuous(0.0, 1.0).snap(1.7), 1.0);
  EXPECT_DOUBLE_EQ(Dimension::continuous(0.0, 1.0).snap(-0.2), 0.0);
  EXPECT_DOUBLE_EQ(Dimension::ordinal({1.0, 2.0, 4.0}).snap(3.2), 4.0);
  EXPECT_DOUBLE_EQ(Dimension::ordinal({1.0, 2.0, 4.0}).snap(2.9), 2.0);
  EXPECT_DOUBLE_EQ(Dimension::categorical(3).snap(7.0), 2.0);
  EXPECT_DOUBLE_EQ(Dimension::categorical(3).snap(0.6), 1.0);
}

TEST(EmpiricalQuantile, Examples) {
  const std::vector<double> a{3, 1, 2};
  EXPECT_DOUBLE_EQ(empirical_quantile(a, 1.0 / 3.0), 1.0);
  const std::vector<double> b{5};
  EXPECT_DOUBLE_EQ(empirical_quantile(b, 0.5), 5.0);
  const std::vector<double> c{1, 1, 2, 4};
  EXPECT_DOUBLE_EQ(empirical_quantile(c, 0.25), 1.0);
}

TEST(EmpiricalQuantile, Errors) {
  const std::vector<double> empty;
  EXPECT_THROW(empirical_quantile(empty, 0.5), DomainError);
  const std::vector<double> ys{1, 2};
  EXPECT_THROW(empirical_quantile(ys, 0.0), DomainError);
  EXPECT_THROW(empirical_quantile(ys, 1.0), DomainError);
  const std::vector<double> bad{1, NAN};
  EXPECT_THROW(empirical_quantile(bad, 0.5), DomainError);
}

TEST(EmpiricalQuantile, InvariantUnderPermutation) {
  Rng rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> ys(1 + trial);
    for (double& y : ys) y = normal(rng);
    const double q = empirical_quantile(ys, 0.3);
    std::shuffle(ys.begin(), ys.end(), rng);
    EXPECT_EQ(q, empirical_quantile(ys, 0.3));
  }
}

TEST(AssignLabels, Examples) {
  LabeledSet a = assign_labels(make_obs({3, 1, 2}), 1.0 / 3.0);
  EXPECT_EQ(a.zs, (std::vector<int>{0, 1, 0}));
  EXPECT_DOUBLE_EQ(a.tau, 1.0);

  LabeledSet b = assign_labels(make_obs({1, 1, 2}), 1.0 / 3.0);
  EXPECT_EQ(b.zs, (std::vector<int>{1, 1, 0}));
  EXPECT_DOUBLE_EQ(b.tau, 1.0);

  LabeledSet c = assign_labels(make_obs({1, 2}), 0.5);
  EXPECT_EQ(c.zs, (std::vector<int>{1, 0}));
  EXPECT_DOUBLE_EQ(c.tau, 1.0);
}

TEST(AssignLabels, MatchesBruteForceOracle) {
  Rng rng(11);
  std::uniform_int_distribution<int> coarse(0, 5);
  for (double gamma : {0.1, 0.25, 1.0 / 3.0, 0.5, 0.9}) {
    for (int n = 1; n < 40; ++n) {
      std::vector<double> ys(n);
      for (double& y : ys) y = coarse(rng);  // deliberately many ties
      const LabeledSet labels = assign_labels(make_obs(ys), gamma);
      EXPECT_EQ(labels.zs, oracle_labels(ys, gamma));
      EXPECT_GE(labels.positives(), static_cast<std::size_t>(std::ceil(gamma * n - 1e-9)));
    }
  }
}

TEST(AssignLabels, PositiveCountExactWithDistinctValues) {
  Rng rng(5);
  std::normal_distribution<double> normal;
  for (double gamma : {0.25, 1.0 / 3.0, 0.5}) {
    for (int n = 2; n < 60; ++n) {
      std::vector<double> ys(n);
      for (double& y : ys) y = normal(rng);
      const LabeledSet labels = assign_labels(make_obs(ys), gamma);
      EXPECT_EQ(labels.positives(), static_cast<std::size_t>(std::ceil(gamma * n - 1e-9)));
    }
  }
}

TEST(AssignLabels, PermutationEquivariance) {
  Rng rng(21);
  std::uniform_int_distribution<int> coarse(0, 8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 30;
    std::vector<double> ys(n);
    for (double& y : ys) y = coarse(rng);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    ObservationSet obs(1);
    ObservationSet permuted(1);
    for (int i = 0; i < n; ++i) obs.append({static_cast<double>(i)}, ys[i]);
    for (int i = 0; i < n; ++i) permuted.append({static_cast<double>(perm[i])}, ys[perm[i]]);
    const LabeledSet a = assign_labels(obs, 1.0 / 3.0);
    const LabeledSet b = assign_labels(permuted, 1.0 / 3.0);
    EXPECT_EQ(a.tau, b.tau);
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(b.zs[i], a.zs[perm[i]]);
      EXPECT_EQ(b.xs[i], a.xs[perm[i]]);
    }
  }
}

TEST(AssignLabels, AtMostOneExistingLabelFlipsPerAppend) {
  for (double gamma : {0.25, 1.0 / 3.0, 0.5}) {
    Rng rng(static_cast<std::uint64_t>(gamma * 1000));
    std::normal_distribution<double> normal;
    ObservationSet obs(1);
    obs.append({0.0}, normal(rng));
    std::vector<int> previous = assign_labels(obs, gamma).zs;
    for (int step = 0; step < 300; ++step) {
      obs.append({0.0}, normal(rng));
      const std::vector<int> current = assign_labels(obs, gamma).zs;
      int flips = 0;
      for (std::size_t i = 0; i < previous.size(); ++i) flips += previous[i] != current[i];
      ASSERT_LE(flips, 1) << "gamma " << gamma << " step " << step;
      previous = current;
    }
  }
}

TEST(UniformSample, Examples) {
  const SearchSpace unit({Dimension::continuous(0.0, 1.0)});
  const auto a = uniform_sample(unit, 3, 42);
  ASSERT_EQ(a.size(), 3u);
  for (const Point& p : a) EXPECT_TRUE(unit.contains(p));
  EXPECT_EQ(a, uniform_sample(unit, 3, 42));
  EXPECT_NE(a, uniform_sample(unit, 3, 43));

  const SearchSpace cat({Dimension::categorical(5)});
  std::vector<int> seen(5, 0);
  for (const Point& p : uniform_sample(cat, 100, 7)) {
    ASSERT_TRUE(p[0] == 0 || p[0] == 1 || p[0] == 2 || p[0] == 3 || p[0] == 4);
    ++seen[static_cast<int>(p[0])];
  }
  for (int c : seen) EXPECT_GT(c, 0);

  const SearchSpace mixed({Dimension::continuous(-1.0, 1.0), Dimension::ordinal({1, 2, 8})});
  const auto m = uniform_sample(mixed, 1, 0);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].size(), 2u);
  EXPECT_TRUE(mixed.contains(m[0]));
}

TEST(ObservationSet, RejectsMismatchedOrNonFinite) {
  ObservationSet obs(2);
  EXPECT_THROW(obs.append({1.0}, 0.0), DomainError);
  EXPECT_THROW(obs.append({1.0, 2.0}, NAN), DomainError);
  obs.append({1.0, 2.0}, 3.0);
  EXPECT_EQ(obs.size(), 1u);
}

}  // namespace
}  // namespace bore
