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

#include "fregret/features.hpp"

#include <gtest/gtest.h>

#include "fregret/cfr.hpp"
#include "fregret/estimator.hpp"
#include "fregret/games.hpp"

namespace fregret {
namespace {

TEST(Featurize, DeterministicWithDeclaredDimension) {
  for (const Game& g : {build_kuhn(), build_leduc()})
    for (const auto& info : g.infosets())
      for (int a = 0; a < info.num_actions(); ++a) {
        const auto phi = featurize(g.id(), info.key, a);
        ASSERT_EQ(phi.size(), feature_dim(g.id()));
        ASSERT_EQ(phi, featurize(g.id(), info.key, a));
      }
}

TEST(Featurize, LeducRootValues) {
  const auto phi = featurize("leduc", "p1:Q:-:", 0);
  EXPECT_EQ(phi[0], 0.0);  // round
  EXPECT_EQ(phi[1], 2.0);  // pot
  EXPECT_EQ(phi[2], 0.0);  // wagers
  EXPECT_EQ(phi[4], 1.0);  // rank Q
  EXPECT_EQ(phi[9], 1.0);  // no board
  EXPECT_EQ(phi[10], 0.0);
  EXPECT_EQ(phi[11], 0.0);  // first seat
  EXPECT_EQ(phi[13], 1.0);  // check
  EXPECT_EQ(phi[18], 1.0);  // no previous action
}

TEST(Featurize, LeducSecondRoundValues) {
  // 1 ante + 2 bet each, then a 4-chip bet: pot 10, facing a raise.
  const auto phi = featurize("leduc", "p2:K:K:rc/r", 2);
  EXPECT_EQ(phi[0], 1.0);
  EXPECT_EQ(phi[1], 10.0);
  EXPECT_EQ(phi[2], 1.0);
  EXPECT_EQ(phi[8], 1.0);   // board K
  EXPECT_EQ(phi[10], 1.0);  // pair
  EXPECT_EQ(phi[11], 1.0);
  EXPECT_EQ(phi[14], 1.0);  // raise
  EXPECT_EQ(phi[17], 1.0);  // opponent raised
}

TEST(Featurize, KuhnRootValues) {
  const auto phi = featurize("kuhn", "p1:K:-:", 0);
  const std::vector<double> want{2, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1};
  EXPECT_EQ(phi, want);
}

TEST(Featurize, SuitsDoNotAffectFeatures) {
  // Every Leduc deal maps through suit-free keys, so deals differing only in
  // suits reach the same infosets and therefore the same vectors.
  const Game leduc = build_leduc();
  for (int i = 0; i < LeducRules::kNumDeals; ++i) {
    auto d = leduc_deal(i);
    for (int j = 0; j < LeducRules::kNumDeals; ++j) {
      auto e = leduc_deal(j);
      if (leduc_rank(d[0]) != leduc_rank(e[0]) || leduc_rank(d[2]) != leduc_rank(e[2])) continue;
      const int a = leduc.node(Game::root()).children[static_cast<std::size_t>(i)];
      const int b = leduc.node(Game::root()).children[static_cast<std::size_t>(j)];
      EXPECT_EQ(leduc.node(a).infoset, leduc.node(b).infoset);
    }
  }
  EXPECT_EQ(featurize("leduc", "p1:J:Q:cc/", 0), featurize("leduc", "p1:J:Q:cc/", 0));
}

TEST(Featurize, MalformedKeysAreRejected) {
  for (const char* key : {"", "p3:J:-:", "p1:X:-:", "p1:J:-:x", "p1:J:-:rrr", "p1:J:-:cc", "p1:J:Q:c/",
                          "p2:J:-:", "p1:J:-:cc/", "p1:J-:", "p1:J:Q:", "p1:J:-:rf"})
    EXPECT_THROW(parse_infoset_key("leduc", key), ValidationError) << key;
  EXPECT_THROW(parse_infoset_key("kuhn", "p1:J:Q:cc/"), ValidationError);
  EXPECT_THROW(featurize("leduc", "p1:J:-:", 3), InvalidArgument);
  EXPECT_THROW(feature_dim("holdem"), InvalidArgument);
}

TEST(Featurize, ParsedLegalActionsMatchTheGame) {
  for (const Game& g : {build_kuhn(), build_leduc()})
    for (const auto& info : g.infosets()) EXPECT_EQ(parse_infoset_key(g.id(), info.key).legal, info.actions) << info.key;
}

TEST(Featurizer, PlainLeducSchemaAliasesSomeHistories) {
  EXPECT_EQ(featurize("leduc", "p1:K:Q:rc/", 0), featurize("leduc", "p1:K:Q:crc/", 0));

  const Game leduc = build_leduc();
  CfrTables tables(leduc);
  for (int t = 0; t < 5; ++t) cfr_iteration(leduc, tables);
  auto dataset = [&](const Featurizer& f) {
    Dataset data(f.dim());
    for (std::size_t s = 0; s < leduc.num_slots(); ++s) data.add(f.features(s), tables.regrets[s]);
    return data;
  };
  TabularEstimator memorizer;
  EXPECT_THROW(memorizer.fit(dataset(Featurizer(leduc, false))), ValidationError);
  const Featurizer disambiguated(leduc, true);
  EXPECT_EQ(disambiguated.dim(), kLeducFeatureDim + 1);
  EXPECT_NO_THROW(memorizer.fit(dataset(disambiguated)));
  for (std::size_t s = 0; s < leduc.num_slots(); ++s) EXPECT_EQ(memorizer.predict(disambiguated.features(s)), tables.regrets[s]);
}

}  // namespace
}  // namespace fregret
