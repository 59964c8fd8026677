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

#ifndef FREGRET_EVAL_HPP
#define FREGRET_EVAL_HPP

// Best response, exploitability and head-to-head evaluation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "fregret/error.hpp"
#include "fregret/game.hpp"

namespace fregret {

struct BestResponseResult {
  /// Responder's expected utility in chips.
  double value = 0.0;
  /// Full profile: the responder's infosets hold the pure best response
  /// (uniform where the opponent never reaches), the rest copy the input.
  TabularPolicy response;
};

/// Exact best response of `responder` against `profile` by backward induction
/// over the responder's infosets, deepest first. Ties go to the lowest action index.
inline BestResponseResult best_response(const Game& game, const TabularPolicy& profile, int responder) {
  if (responder < 0 || responder >= kNumPlayers) throw InvalidArgument("best_response: bad responder");
  const auto num_nodes = game.nodes().size();
  const auto num_infosets = game.infosets().size();

  // Opponent-and-chance reach of every node and responder decision depth of every infoset.
  std::vector<double> opp_reach(num_nodes, 0.0);
  std::vector<std::vector<int>> members(num_infosets);
  std::vector<int> own_depth(num_infosets, 0);
  {
    auto walk = [&](auto&& self, int id, double reach, int depth) -> void {
      opp_reach[static_cast<std::size_t>(id)] = reach;
      const GameNode& n = game.node(id);
      if (n.kind == NodeKind::kTerminal) return;
      if (n.kind == NodeKind::kChance) {
        for (std::size_t a = 0; a < n.children.size(); ++a) self(self, n.children[a], reach * n.chance_probs[a], depth);
        return;
      }
      const InfoSet& info = game.infoset(n.infoset);
      if (n.player == responder) {
        members[static_cast<std::size_t>(n.infoset)].push_back(id);
        own_depth[static_cast<std::size_t>(n.infoset)] = depth;
        for (int c : n.children) self(self, c, reach, depth + 1);
      } else {
        auto probs = profile.at(info);
        for (std::size_t a = 0; a < n.children.size(); ++a) self(self, n.children[a], reach * probs[a], depth);
      }
    };
    walk(walk, Game::root(), 1.0, 0);
  }

  std::vector<int> choice(num_infosets, 0);
  std::vector<bool> reached(num_infosets, false);
  auto cf_value = [&](auto&& self, int id) -> double {
    const GameNode& n = game.node(id);
    const double reach = opp_reach[static_cast<std::size_t>(id)];
    if (reach == 0.0) return 0.0;
    if (n.kind == NodeKind::kTerminal) return reach * n.utility[static_cast<std::size_t>(responder)];
    if (n.kind == NodeKind::kDecision && n.player == responder)
      return self(self, n.children[static_cast<std::size_t>(choice[static_cast<std::size_t>(n.infoset)])]);
    double total = 0.0;
    for (int c : n.children) total += self(self, c);
    return total;
  };

  std::vector<int> order;
  for (std::size_t i = 0; i < num_infosets; ++i)
    if (!members[i].empty()) order.push_back(static_cast<int>(i));
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return own_depth[static_cast<std::size_t>(a)] > own_depth[static_cast<std::size_t>(b)]; });
  for (int i : order) {
    const InfoSet& info = game.infoset(i);
    double mass = 0.0;
    for (int h : members[static_cast<std::size_t>(i)]) mass += opp_reach[static_cast<std::size_t>(h)];
    reached[static_cast<std::size_t>(i)] = mass > 0.0;
    if (!reached[static_cast<std::size_t>(i)]) continue;
    double best = 0.0;
    for (int a = 0; a < info.num_actions(); ++a) {
      double v = 0.0;
      for (int h : members[static_cast<std::size_t>(i)]) v += cf_value(cf_value, game.node(h).children[static_cast<std::size_t>(a)]);
      if (a == 0 || v > best) {
        best = v;
        choice[static_cast<std::size_t>(i)] = a;
      }
    }
  }

  BestResponseResult result;
  result.value = cf_value(cf_value, Game::root());
  result.response = profile;
  for (std::size_t i = 0; i < num_infosets; ++i) {
    const InfoSet& info = game.infosets()[i];
    if (info.player != responder) continue;
    auto probs = result.response.at(info);
    if (reached[i]) {
      std::fill(probs.begin(), probs.end(), 0.0);
      probs[static_cast<std::size_t>(choice[i])] = 1.0;
    } else {
      std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(info.num_actions()));
    }
  }
  return result;
}

inline BestResponseResult best_response(const Game& game, const StrategyProfile& profile, int responder) {
  return best_response(game, to_tabular(game, profile), responder);
}

/// Sum of both players' best-response values; zero exactly at a Nash equilibrium.
inline double exploitability(const Game& game, const TabularPolicy& profile) {
  return best_response(game, profile, 0).value + best_response(game, profile, 1).value;
}

inline double exploitability(const Game& game, const StrategyProfile& profile) {
  return exploitability(game, to_tabular(game, profile));
}

/// Expected chips per hand for `a` against `b`, averaged over both seatings.
inline double exact_ev(const Game& game, const TabularPolicy& a, const TabularPolicy& b) {
  const double a_first = expected_value(game, combine(game, a, b))[0];
  const double a_second = expected_value(game, combine(game, b, a))[1];
  return 0.5 * (a_first + a_second);
}

inline double exact_ev(const Game& game, const StrategyProfile& a, const StrategyProfile& b) {
  return exact_ev(game, to_tabular(game, a), to_tabular(game, b));
}

struct MatchResult {
  std::int64_t hands = 0;
  double mean = 0.0;    // chips/hand for profile a
  double std_error = 0.0;  // standard error of the mean
  std::uint64_t seed = 0;
  bool duplicate = false;
};

namespace detail {

inline std::size_t sample_index(std::span<const double> probs, std::mt19937_64& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

/// Plays one hand; returns seat 1's utility.
inline double play_hand(const Game& game, const TabularPolicy& seat1, const TabularPolicy& seat2,
                        std::mt19937_64& chance_rng, std::mt19937_64& action_rng) {
  int id = Game::root();
  for (;;) {
    const GameNode& n = game.node(id);
    switch (n.kind) {
      case NodeKind::kTerminal:
        return n.utility[0];
      case NodeKind::kChance:
        id = n.children[sample_index(n.chance_probs, chance_rng)];
        break;
      case NodeKind::kDecision: {
        const auto& policy = n.player == 0 ? seat1 : seat2;
        id = n.children[sample_index(policy.at(game.infoset(n.infoset)), action_rng)];
        break;
      }
    }
  }
}

}  // namespace detail

/// Monte-Carlo match of `a` against `b`. Without duplicate, `a` alternates
/// seats hand by hand. With duplicate, each sampled deal is played twice
/// with seats swapped (ceil(hands / 2) pairs) and the pair average is one
/// sample.
inline MatchResult sampled_match(const Game& game, const TabularPolicy& a, const TabularPolicy& b,
                                 std::int64_t hands, std::uint64_t seed, bool duplicate) {
  if (hands < 1) throw InvalidArgument("sampled_match: hands must be positive");
  std::mt19937_64 seeder(seed);
  std::mt19937_64 chance_rng(seeder());
  std::mt19937_64 action_rng(seeder());

  std::vector<double> samples;
  if (duplicate) {
    const std::int64_t pairs = (hands + 1) / 2;
    samples.reserve(static_cast<std::size_t>(pairs));
    for (std::int64_t k = 0; k < pairs; ++k) {
      std::mt19937_64 replay = chance_rng;
      const double first = detail::play_hand(game, a, b, chance_rng, action_rng);
      const double second = -detail::play_hand(game, b, a, replay, action_rng);
      samples.push_back(0.5 * (first + second));
    }
  } else {
    samples.reserve(static_cast<std::size_t>(hands));
    for (std::int64_t k = 0; k < hands; ++k) {
      samples.push_back(k % 2 == 0 ? detail::play_hand(game, a, b, chance_rng, action_rng)
                                   : -detail::play_hand(game, b, a, chance_rng, action_rng));
    }
  }

  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  MatchResult result;
  result.hands = duplicate ? 2 * static_cast<std::int64_t>(samples.size()) : hands;
  result.mean = mean;
  result.std_error = samples.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  result.seed = seed;
  result.duplicate = duplicate;
  return result;
}

}  // namespace fregret

#endif  // FREGRET_EVAL_HPP
