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

#include "fregret/cfr.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include <random>

#include "fregret/games.hpp"
#include "oracles.hpp"

namespace fregret {
namespace {

TEST(CurrentPolicy, FreshTablesAreUniform) {
  const Game kuhn = build_kuhn();
  const CfrTables tables(kuhn);
  for (const auto& info : kuhn.infosets())
    for (double p : current_policy(kuhn, tables, info.key)) EXPECT_EQ(p, 0.5);
}

TEST(CurrentPolicy, RegretMatchesStoredRegrets) {
  GameBuilder b("toy");
  int x = b.add_terminal({0, 0}), y = b.add_terminal({0, 0}), z = b.add_terminal({0, 0});
  const Game toy = std::move(b).build(b.add_decision(0, "p1:J:-:", {'f', 'c', 'r'}, {x, y, z}));
  CfrTables tables(toy);
  tables.regrets = {2, 2, 0};
  EXPECT_EQ(current_policy(toy, tables, 0), (std::vector<double>{0.5, 0.5, 0.0}));
  EXPECT_THROW(current_policy(toy, tables, "p2:J:-:"), ValidationError);
  EXPECT_THROW(current_policy(toy, tables, 1), InvalidArgument);
}

TEST(CfrIteration, FirstIterationMatchesKuhnOracle) {
  const Game kuhn = build_kuhn();
  CfrTables tables(kuhn);
  const auto uniform = testing::policy_fn(kuhn, uniform_policy(kuhn));
  const auto immediate = cfr_iteration(kuhn, tables);
  for (const auto& info : kuhn.infosets()) {
    const int seat = info.player;
    const int card = static_cast<int>(kRankChars.find(info.key[3]));
    const auto want = testing::kuhn::immediate_regrets(uniform, seat, card, info.key.substr(7));
    for (std::size_t a = 0; a < 2; ++a) {
      EXPECT_NEAR(immediate[info.offset + a], want[a], 1e-12) << info.key;
      EXPECT_NEAR(tables.regrets[info.offset + a], want[a], 1e-12) << info.key;
    }
  }
}

TEST(CfrIteration, SecondIterationMatchesOracleUnderUpdatedPolicy) {
  const Game kuhn = build_kuhn();
  CfrTables tables(kuhn);
  cfr_iteration(kuhn, tables);
  const auto policy = testing::policy_fn(kuhn, current_policy(kuhn, tables));
  const auto before = tables.regrets;
  const auto immediate = cfr_iteration(kuhn, tables);
  for (const auto& info : kuhn.infosets()) {
    const auto want = testing::kuhn::immediate_regrets(policy, info.player,
                                                       static_cast<int>(kRankChars.find(info.key[3])), info.key.substr(7));
    for (std::size_t a = 0; a < 2; ++a) {
      EXPECT_NEAR(immediate[info.offset + a], want[a], 1e-12) << info.key;
      EXPECT_NEAR(tables.regrets[info.offset + a], before[info.offset + a] + want[a], 1e-12);
    }
  }
}

TEST(CounterfactualPass, RootValueAndRegretsAreConsistent) {
  for (const Game& g : {build_kuhn(), build_leduc()}) {
    std::mt19937_64 rng(99);
    const auto policy = testing::random_policy(g, rng);
    std::vector<double> immediate(g.num_slots(), 0.0), sums(g.num_slots(), 0.0);
    const Utility root = counterfactual_pass(g, policy, {true, true}, immediate, sums);
    const Utility ev = expected_value(g, policy);
    EXPECT_NEAR(root[0], ev[0], 1e-12);
    EXPECT_NEAR(root[1], ev[1], 1e-12);
    // Policy-weighted immediate regret is zero at every infoset.
    for (const auto& info : g.infosets()) {
      double weighted = 0.0;
      for (std::size_t a = 0; a < info.actions.size(); ++a) weighted += policy.at(info)[a] * immediate[info.offset + a];
      EXPECT_NEAR(weighted, 0.0, 1e-12) << info.key;
    }
  }
}

TEST(AverageStrategy, AfterOneIterationIsUniform) {
  for (const Game& g : {build_kuhn(), build_leduc()}) {
    CFRConfig config;
    config.iterations = 1;
    const auto result = solve(g, config);
    for (const auto& info : g.infosets())
      for (double p : result.average.at(info)) EXPECT_NEAR(p, 1.0 / static_cast<double>(info.actions.size()), 1e-15);
    ASSERT_EQ(result.log.size(), 1u);
    EXPECT_NEAR(result.log[0].exploitability, exploitability(g, uniform_policy(g)), 1e-15);
  }
}

TEST(Solve, DeterministicAcrossRuns) {
  CFRConfig config;
  config.iterations = 50;
  const Game kuhn = build_kuhn();
  const auto a = solve(kuhn, config);
  const auto b = solve(kuhn, config);
  EXPECT_EQ(a.tables.regrets, b.tables.regrets);
  EXPECT_TRUE(std::ranges::equal(a.average.slots(), b.average.slots()));
}

TEST(Solve, FolkBoundHoldsAtEveryLoggedIteration) {
  for (const Game& g : {build_kuhn(), build_leduc()}) {
    CFRConfig config;
    config.iterations = g.id() == "kuhn" ? 2000 : 300;
    config.log_every = 1;
    for (const auto& row : solve(g, config).log)
      ASSERT_LE(row.exploitability, row.max_pos_regret_sum / static_cast<double>(row.t) + 1e-12) << g.id() << " t=" << row.t;
  }
}

TEST(Solve, LeducExploitabilityShrinksByDecade) {
  CFRConfig config;
  config.iterations = 1000;
  config.log_every = 10;
  const auto log = solve(build_leduc(), config).log;
  std::map<std::int64_t, double> at;
  for (const auto& row : log) at[row.t] = row.exploitability;
  for (std::int64_t t = 100; t <= 1000; t += 100) EXPECT_LE(at.at(t), at.at(t / 10)) << "t=" << t;
  EXPECT_LT(at.at(1000), 0.25 * at.at(100));
}

TEST(Solve, AlternatingUpdatesAlsoConverge) {
  CFRConfig config;
  config.iterations = 1000;
  config.log_every = 1000;
  config.update_mode = UpdateMode::kAlternating;
  const auto result = solve(build_kuhn(), config);
  EXPECT_LT(result.log.back().exploitability, 0.02);
}

TEST(Solve, RejectsNonPositiveIterations) {
  CFRConfig config;
  config.iterations = 0;
  EXPECT_THROW(solve(build_kuhn(), config), InvalidArgument);
}

}  // namespace
}  // namespace fregret
