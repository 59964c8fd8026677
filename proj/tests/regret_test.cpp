// Copyright 2026 The fregret Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fregret/regret.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fregret {
namespace {

void expect_probs(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-15) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

TEST(RegretMatch, Examples) {
  expect_probs(regret_match(std::vector<double>{0, 0, 0}), {1.0 / 3, 1.0 / 3, 1.0 / 3});
  expect_probs(regret_match(std::vector<double>{3, 1, 0}), {0.75, 0.25, 0.0});
  expect_probs(regret_match(std::vector<double>{-2, -5}), {0.5, 0.5});
  EXPECT_THROW(regret_match(std::vector<double>{}), InvalidArgument);
}

TEST(RegretMatch, ValidDistributionAndPositiveScalingInvariance) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> r(1 + rng() % 6);
    for (double& x : r) x = normal(rng);
    const auto p = regret_match(r);
    double total = 0.0;
    for (double x : p) {
      EXPECT_GE(x, 0.0);
      total += x;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    // Powers of two scale exactly, so equality is bitwise.
    for (double c : {0.25, 2.0, 1024.0}) {
      std::vector<double> scaled(r);
      for (double& x : scaled) x *= c;
      EXPECT_EQ(regret_match(scaled), p);
    }
    // Other positive factors agree up to rounding.
    std::vector<double> scaled(r);
    const double c = 0.1 + std::abs(normal(rng));
    for (double& x : scaled) x *= c;
    expect_probs(regret_match(scaled), p, 1e-12);
  }
}

TEST(RmUpdate, OneStepFromFreshState) {
  RegretMatcher s(2);
  s = rm_update(s, std::vector<double>{1, 0});
  expect_probs(s.regrets, {0.5, -0.5});
  EXPECT_EQ(s.t, 1);
  expect_probs(average_strategy(s), {0.5, 0.5});
}

TEST(RmUpdate, EqualPayoffsLeaveRegretsUnchanged) {
  RegretMatcher s(3);
  s.regrets = {2.0, -1.0, 0.5};
  s = rm_update(s, std::vector<double>{4, 4, 4});
  expect_probs(s.regrets, {2.0, -1.0, 0.5});
}

TEST(RmUpdate, TwoStepsAgainstFixedRock) {
  // Payoffs vs Rock for (Rock, Paper, Scissors): (0, 1, -1).
  const std::vector<double> u{0, 1, -1};
  RegretMatcher s(3);
  s = rm_update(s, u);  // uniform play, <sigma, u> = 0
  expect_probs(s.regrets, {0, 1, -1});
  s = rm_update(s, u);  // play Paper, <sigma, u> = 1
  expect_probs(s.regrets, {-1, 1, -3});
  expect_probs(s.cumulative_strategy, {1.0 / 3, 4.0 / 3, 1.0 / 3});
}

TEST(RmUpdate, LengthMismatchThrows) {
  EXPECT_THROW(rm_update(RegretMatcher(2), std::vector<double>{1, 2, 3}), InvalidArgument);
}

TEST(AverageStrategy, ArithmeticAndErrors) {
  RegretMatcher s(2);
  EXPECT_THROW(average_strategy(s), InvalidArgument);
  s.cumulative_strategy = {0.5 + 1.0, 0.5 + 0.0};
  s.t = 2;
  expect_probs(average_strategy(s), {0.75, 0.25});
}

TEST(AverageStrategy, RpsSelfPlayIsNearUniform) {
  const auto rps = build_matrix("rps");
  RegretMatcher a(3), b(3);
  for (int t = 0; t < 10000; ++t) {
    const auto sa = a.current_strategy();
    const auto sb = b.current_strategy();
    std::vector<double> ua(3, 0.0), ub(3, 0.0);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        ua[static_cast<std::size_t>(r)] += rps.payoff(r, c) * sb[static_cast<std::size_t>(c)];
        ub[static_cast<std::size_t>(c)] -= rps.payoff(r, c) * sa[static_cast<std::size_t>(r)];
      }
    a = rm_update(a, ua);
    b = rm_update(b, ub);
  }
  for (double p : average_strategy(a)) EXPECT_NEAR(p, 1.0 / 3, 0.02);
}

TEST(RegretBound, StructuralProperties) {
  double prev = regret_bound(1, 2.0, 3, 0.0);
  EXPECT_NEAR(prev, 2.0 * std::sqrt(3.0), 1e-15);
  for (std::int64_t t : {2, 10, 100, 1000, 100000}) {
    const double b = regret_bound(t, 2.0, 3, 0.0);
    EXPECT_LE(b, prev);
    EXPECT_NEAR(b, 2.0 * std::sqrt(3.0 / static_cast<double>(t)), 1e-12);
    prev = b;
  }
  EXPECT_LT(regret_bound(100000000, 2.0, 3, 0.0), 1e-3);
  // Nonzero floor that grows with epsilon.
  const double floor_small = regret_bound(100000000, 2.0, 3, 0.2);
  const double floor_large = regret_bound(100000000, 2.0, 3, 0.8);
  EXPECT_NEAR(floor_small, std::sqrt(3.0 * 2.0 * 0.2), 1e-3);
  EXPECT_GT(floor_large, floor_small);
  EXPECT_EQ(regret_bound(50, 0.0, 3, 0.5), 0.0);
  EXPECT_THROW(regret_bound(0, 1.0, 3, 0.0), InvalidArgument);
  EXPECT_THROW(regret_bound(5, -1.0, 3, 0.0), InvalidArgument);
}

std::vector<double> rps_payoff_vs(const std::vector<double>& opponent) {
  const auto rps = build_matrix("rps");
  std::vector<double> u(3, 0.0);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) u[static_cast<std::size_t>(r)] += rps.payoff(r, c) * opponent[static_cast<std::size_t>(c)];
  return u;
}

TEST(RrmStep, ExactOracleReproducesRegretMatching) {
  std::mt19937_64 rng(5);
  for (const NoiseModel& noise : {NoiseModel{NoNoise{}}, NoiseModel{BoundedLinfNoise{0.0}}}) {
    RRMState rrm(3, tabular_estimator(), {noise, 9});
    RegretMatcher rm(3);
    for (int t = 0; t < 500; ++t) {
      std::vector<double> opp{std::uniform_real_distribution<double>(0, 1)(rng), 0.3, 0.2};
      const auto u = rps_payoff_vs(opp);
      rrm_step(rrm, u);
      rm = rm_update(rm, u);
      ASSERT_EQ(rrm.matcher().regrets, rm.regrets) << "t=" << t;
      ASSERT_EQ(rrm.matcher().cumulative_strategy, rm.cumulative_strategy);
    }
  }
}

TEST(RrmStep, TreeEstimatorOnOneHotFeaturesIsAlsoExact) {
  RRMState rrm(3, std::make_unique<TreeEstimator>(), {});
  RegretMatcher rm(3);
  const std::vector<double> u{0.0, 1.0, -1.0};
  for (int t = 0; t < 50; ++t) {
    rrm_step(rrm, u);
    rm = rm_update(rm, u);
  }
  for (std::size_t a = 0; a < 3; ++a) EXPECT_NEAR(rrm.matcher().regrets[a], rm.regrets[a], 1e-12);
}

TEST(RrmStep, NoiseChangesPlayButStaysWithinBound) {
  RRMState noisy(3, tabular_estimator(), {BoundedLinfNoise{0.5}, 3});
  const std::vector<double> u{0.0, 1.0, -1.0};
  for (int t = 1; t <= 2000; ++t) {
    noisy.step(u);
    EXPECT_LE(max_average_regret(noisy.matcher()), regret_bound(t, 2.0, 3, 0.5) + 1e-12);
  }
}

TEST(RrmStep, ErrorsAndNegativeNoiseRejected) {
  EXPECT_THROW(RRMState(3, nullptr), InvalidArgument);
  EXPECT_THROW(RRMState(3, tabular_estimator(), {BoundedLinfNoise{-1.0}, 0}), InvalidArgument);
  EXPECT_THROW(RRMState(3, tabular_estimator(), {GaussianNoise{-1.0}, 0}), InvalidArgument);
  RRMState s(2, tabular_estimator());
  EXPECT_THROW(s.step(std::vector<double>{1, 2, 3}), InvalidArgument);
}

TEST(RrmSelfplay, ClassicalBoundHoldsOnEveryMatrixGame) {
  for (const auto& game : {build_matrix("rps"), build_matrix("biased_mp"), make_matrix("skew", {{3, -1, 0}, {-2, 4, 1}})}) {
    const auto log = rrm_selfplay(game, 5000, 0.0, 0, 1);
    for (const auto& row : log) ASSERT_LE(row.avg_regret, row.bound + 1e-12) << game.name << " t=" << row.t;
  }
}

TEST(RrmSelfplay, DeterministicForSeedAndLogsFinalRound) {
  const auto rps = build_matrix("rps");
  const auto a = rrm_selfplay(rps, 1001, 0.2, 4, 100);
  const auto b = rrm_selfplay(rps, 1001, 0.2, 4, 100);
  ASSERT_EQ(a.size(), 11u);
  EXPECT_EQ(a.back().t, 1001);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].avg_regret, b[i].avg_regret);
}

}  // namespace
}  // namespace fregret
