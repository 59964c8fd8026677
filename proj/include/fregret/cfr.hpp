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

#ifndef FREGRET_CFR_HPP
#define FREGRET_CFR_HPP

// Full-width tabular counterfactual regret minimization.
//
// Regrets are plain cumulative sums (never floored); the positive part is
// taken when the policy is read. The average strategy weights each
// iteration's policy by the acting player's own reach probability.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "fregret/error.hpp"
#include "fregret/eval.hpp"
#include "fregret/game.hpp"
#include "fregret/regret.hpp"

namespace fregret {

enum class UpdateMode { kSimultaneous, kAlternating };

struct CFRConfig {
  std::int64_t iterations = 1;
  UpdateMode update_mode = UpdateMode::kSimultaneous;
  std::int64_t log_every = 1;
};

/// Cumulative regrets R^T(I, a) and average-strategy numerators, both laid
/// out by Game slot (infoset.offset + action).
struct CfrTables {
  std::vector<double> regrets;
  std::vector<double> strategy_sums;

  CfrTables() = default;
  explicit CfrTables(const Game& game) : regrets(game.num_slots(), 0.0), strategy_sums(game.num_slots(), 0.0) {}

  std::span<const double> regrets_at(const InfoSet& info) const {
    return std::span<const double>(regrets).subspan(info.offset, info.actions.size());
  }
  std::span<const double> strategy_sums_at(const InfoSet& info) const {
    return std::span<const double>(strategy_sums).subspan(info.offset, info.actions.size());
  }
};

/// Regret-matching policy at one infoset.
inline std::vector<double> current_policy(const Game& game, const CfrTables& tables, int infoset) {
  if (infoset < 0 || infoset >= static_cast<int>(game.infosets().size()))
    throw InvalidArgument("current_policy: infoset index out of range");
  return regret_match(tables.regrets_at(game.infoset(infoset)));
}

inline std::vector<double> current_policy(const Game& game, const CfrTables& tables, std::string_view key) {
  return current_policy(game, tables, game.infoset_index(key));
}

/// Regret-matching policy at every infoset.
inline TabularPolicy current_policy(const Game& game, const CfrTables& tables) {
  TabularPolicy policy(std::vector<double>(game.num_slots(), 0.0));
  for (const auto& info : game.infosets()) {
    const auto probs = regret_match(tables.regrets_at(info));
    std::copy(probs.begin(), probs.end(), policy.at(info).begin());
  }
  return policy;
}

/// Normalized strategy sums; infosets with no mass get the uniform distribution.
inline TabularPolicy average_strategy(const Game& game, const CfrTables& tables) {
  TabularPolicy policy(std::vector<double>(game.num_slots(), 0.0));
  for (const auto& info : game.infosets()) {
    auto sums = tables.strategy_sums_at(info);
    double total = 0.0;
    for (double s : sums) total += s;
    auto out = policy.at(info);
    for (std::size_t a = 0; a < sums.size(); ++a)
      out[a] = total > 0.0 ? sums[a] / total : 1.0 / static_cast<double>(sums.size());
  }
  return policy;
}

/// One full-tree pass under `policy`. For every decision node of a player
/// flagged in `update`, adds pi_{-i}(h) * (v_i(h, a) - v_i(h)) to
/// `immediate` and pi_i(h) * policy(I, a) to `strategy_sums`. Returns the
/// root values.
inline Utility counterfactual_pass(const Game& game, const TabularPolicy& policy, std::array<bool, kNumPlayers> update,
                                   std::span<double> immediate, std::span<double> strategy_sums) {
  auto walk = [&](auto&& self, int id, const Reach& reach) -> Utility {
    const GameNode& n = game.node(id);
    if (n.kind == NodeKind::kTerminal) return n.utility;
    Utility value{};
    if (n.kind == NodeKind::kChance) {
      for (std::size_t a = 0; a < n.children.size(); ++a) {
        Reach next = reach;
        next.chance *= n.chance_probs[a];
        const Utility child = self(self, n.children[a], next);
        value[0] += n.chance_probs[a] * child[0];
        value[1] += n.chance_probs[a] * child[1];
      }
      return value;
    }
    const InfoSet& info = game.infoset(n.infoset);
    const auto player = static_cast<std::size_t>(n.player);
    const auto probs = policy.at(info);
    // Up to 3 actions in the bundled games; the vector keeps this general.
    std::vector<double> action_values(n.children.size());
    for (std::size_t a = 0; a < n.children.size(); ++a) {
      Reach next = reach;
      next.player[player] *= probs[a];
      const Utility child = self(self, n.children[a], next);
      action_values[a] = child[player];
      value[0] += probs[a] * child[0];
      value[1] += probs[a] * child[1];
    }
    if (update[player]) {
      const double others = reach.others(n.player);
      const double own = reach.player[player];
      for (std::size_t a = 0; a < n.children.size(); ++a) {
        immediate[info.offset + a] += others * (action_values[a] - value[player]);
        strategy_sums[info.offset + a] += own * probs[a];
      }
    }
    return value;
  };
  return walk(walk, Game::root(), Reach{});
}

/// One CFR iteration: computes immediate counterfactual regrets under the
/// current regret-matching profile, adds them to the tables and returns them.
/// Alternating mode runs two single-player passes, the second against the
/// first player's updated policy.
inline std::vector<double> cfr_iteration(const Game& game, CfrTables& tables,
                                         UpdateMode mode = UpdateMode::kSimultaneous) {
  std::vector<double> immediate(game.num_slots(), 0.0);
  // Per-iteration buffers, added afterwards, keep the arithmetic identical to RCFR's.
  std::vector<double> sums(game.num_slots(), 0.0);
  if (mode == UpdateMode::kSimultaneous) {
    counterfactual_pass(game, current_policy(game, tables), {true, true}, immediate, sums);
  } else {
    for (int p = 0; p < kNumPlayers; ++p) {
      std::vector<double> pass(game.num_slots(), 0.0);
      std::array<bool, kNumPlayers> update{};
      update[static_cast<std::size_t>(p)] = true;
      counterfactual_pass(game, current_policy(game, tables), update, pass, sums);
      for (std::size_t s = 0; s < pass.size(); ++s) {
        tables.regrets[s] += pass[s];
        immediate[s] += pass[s];
      }
    }
  }
  for (std::size_t s = 0; s < immediate.size(); ++s) {
    if (mode == UpdateMode::kSimultaneous) tables.regrets[s] += immediate[s];
    tables.strategy_sums[s] += sums[s];
  }
  return immediate;
}

/// (1/T) * sum over players and infosets of max_a R^T(I, a)_+ bounds the
/// exploitability of the average strategy; this returns the unnormalized sum.
inline double max_positive_regret_sum(const Game& game, const CfrTables& tables) {
  double total = 0.0;
  for (const auto& info : game.infosets()) {
    auto r = tables.regrets_at(info);
    total += std::max(0.0, *std::max_element(r.begin(), r.end()));
  }
  return total;
}

/// Row of the convergence log (`t,exploitability,max_pos_regret_sum,wall_ms`).
struct CfrLogRow {
  std::int64_t t = 0;
  double exploitability = 0.0;
  double max_pos_regret_sum = 0.0;
  double wall_ms = 0.0;
};

struct CfrResult {
  TabularPolicy average;
  CfrTables tables;
  std::vector<CfrLogRow> log;
};

/// Runs `config.iterations` iterations, logging every `log_every` and at the end.
inline CfrResult solve(const Game& game, const CFRConfig& config) {
  if (config.iterations < 1 || config.log_every < 1)
    throw InvalidArgument("CFRConfig: iterations and log_every must be positive");
  CfrResult result;
  result.tables = CfrTables(game);
  const auto start = std::chrono::steady_clock::now();
  for (std::int64_t t = 1; t <= config.iterations; ++t) {
    cfr_iteration(game, result.tables, config.update_mode);
    if (t % config.log_every == 0 || t == config.iterations) {
      CfrLogRow row;
      row.t = t;
      row.exploitability = exploitability(game, average_strategy(game, result.tables));
      row.max_pos_regret_sum = max_positive_regret_sum(game, result.tables);
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      result.log.push_back(row);
    }
  }
  result.average = average_strategy(game, result.tables);
  return result;
}

}  // namespace fregret

#endif  // FREGRET_CFR_HPP
