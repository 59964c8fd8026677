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

#ifndef FREGRET_GAME_HPP
#define FREGRET_GAME_HPP

// Two-player zero-sum extensive-form games stored as an immutable node arena,
// plus the profile types and reach-weighted traversals every solver shares.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fregret/error.hpp"

namespace fregret {

inline constexpr int kNumPlayers = 2;

using Utility = std::array<double, kNumPlayers>;

enum class NodeKind : std::uint8_t { kChance, kDecision, kTerminal };

struct GameNode {
  NodeKind kind = NodeKind::kTerminal;
  int player = -1;   // decision nodes only
  int infoset = -1;  // decision nodes only; index into Game::infosets()
  std::vector<int> children;
  std::vector<double> chance_probs;  // chance nodes only
  Utility utility{};                 // terminal nodes only
};

struct InfoSet {
  int player = 0;
  std::string key;
  std::vector<char> actions;  // action labels in index order
  std::size_t offset = 0;     // first slot of this infoset in flat per-action arrays

  int num_actions() const noexcept { return static_cast<int>(actions.size()); }
};

class GameBuilder;

class Game {
 public:
  const std::string& id() const noexcept { return id_; }
  static constexpr int root() noexcept { return 0; }

  const GameNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  std::span<const GameNode> nodes() const noexcept { return nodes_; }

  const InfoSet& infoset(int index) const { return infosets_[static_cast<std::size_t>(index)]; }
  std::span<const InfoSet> infosets() const noexcept { return infosets_; }

  std::optional<int> find_infoset(std::string_view key) const {
    auto it = index_.find(std::string(key));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int infoset_index(std::string_view key) const {
    auto found = find_infoset(key);
    if (!found) throw ValidationError("unknown infoset '" + std::string(key) + "' in game " + id_);
    return *found;
  }

  /// Total number of (infoset, action) slots; the size of flat per-action tables.
  std::size_t num_slots() const noexcept { return num_slots_; }

  /// Max minus min terminal utility over both players.
  double utility_range() const noexcept { return utility_range_; }

 private:
  friend class GameBuilder;

  std::string id_;
  std::vector<GameNode> nodes_;
  std::vector<InfoSet> infosets_;
  std::unordered_map<std::string, int> index_;
  std::size_t num_slots_ = 0;
  double utility_range_ = 0.0;
};

/// Builds a Game bottom-up: children are added before their parent. `build`
/// renumbers nodes and infosets in depth-first pre-order and validates the tree.
class GameBuilder {
 public:
  explicit GameBuilder(std::string id) : id_(std::move(id)) {}

  int add_terminal(Utility utility) {
    GameNode n;
    n.kind = NodeKind::kTerminal;
    n.utility = utility;
    return push(std::move(n));
  }

  int add_chance(std::vector<double> probs, std::vector<int> children) {
    if (probs.size() != children.size() || children.empty())
      throw ValidationError("chance node needs one probability per child");
    GameNode n;
    n.kind = NodeKind::kChance;
    n.chance_probs = std::move(probs);
    n.children = std::move(children);
    return push(std::move(n));
  }

  int add_decision(int player, const std::string& key, std::vector<char> actions,
                   std::vector<int> children) {
    if (player < 0 || player >= kNumPlayers)
      throw ValidationError("decision node player out of range at '" + key + "'");
    if (children.empty() || actions.size() != children.size())
      throw ValidationError("decision node '" + key + "' needs one child per action");
    auto [it, inserted] = keys_.try_emplace(key, static_cast<int>(raw_infosets_.size()));
    if (inserted) {
      raw_infosets_.push_back(InfoSet{player, key, std::move(actions), 0});
    } else {
      const InfoSet& existing = raw_infosets_[static_cast<std::size_t>(it->second)];
      if (existing.player != player || existing.actions != actions)
        throw ValidationError("inconsistent action list or player at infoset '" + key + "'");
    }
    GameNode n;
    n.kind = NodeKind::kDecision;
    n.player = player;
    n.infoset = it->second;
    n.children = std::move(children);
    return push(std::move(n));
  }

  Game build(int root) &&;

 private:
  int push(GameNode n) {
    for (int c : n.children)
      if (c < 0 || c >= static_cast<int>(nodes_.size()))
        throw ValidationError("child id refers to a node not yet added");
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::string id_;
  std::vector<GameNode> nodes_;
  std::vector<InfoSet> raw_infosets_;
  std::unordered_map<std::string, int> keys_;
};

inline Game GameBuilder::build(int root) && {
  if (root < 0 || root >= static_cast<int>(nodes_.size()))
    throw ValidationError("root id out of range");

  Game game;
  game.id_ = id_;
  std::vector<int> node_map(nodes_.size(), -1);
  std::vector<int> infoset_map(raw_infosets_.size(), -1);
  // Own (infoset, action) sequence seen at the first visit of each infoset.
  using Sequence = std::vector<std::pair<int, int>>;
  std::vector<Sequence> recall(raw_infosets_.size());
  std::array<Sequence, kNumPlayers> seq;
  double umin = 0.0, umax = 0.0;
  bool any_terminal = false;

  auto visit = [&](auto&& self, int old_id) -> int {
    if (node_map[static_cast<std::size_t>(old_id)] != -1)
      throw ValidationError("node reachable along two paths; the game must be a tree");
    const int new_id = static_cast<int>(game.nodes_.size());
    node_map[static_cast<std::size_t>(old_id)] = new_id;
    game.nodes_.push_back(nodes_[static_cast<std::size_t>(old_id)]);
    const GameNode& src = nodes_[static_cast<std::size_t>(old_id)];

    switch (src.kind) {
      case NodeKind::kTerminal: {
        if (!src.children.empty()) throw ValidationError("terminal node with children");
        if (src.utility[0] + src.utility[1] != 0.0)
          throw ValidationError("terminal utilities are not zero-sum");
        for (double u : src.utility) {
          umin = any_terminal ? std::min(umin, u) : u;
          umax = any_terminal ? std::max(umax, u) : u;
          any_terminal = true;
        }
        return new_id;
      }
      case NodeKind::kChance: {
        double total = 0.0;
        for (double p : src.chance_probs) {
          if (!(p >= 0.0)) throw ValidationError("negative chance probability");
          total += p;
        }
        if (std::abs(total - 1.0) > 1e-12) throw ValidationError("chance probabilities do not sum to 1");
        break;
      }
      case NodeKind::kDecision: {
        const int raw = src.infoset;
        auto& mapped = infoset_map[static_cast<std::size_t>(raw)];
        if (mapped == -1) {
          mapped = static_cast<int>(game.infosets_.size());
          game.infosets_.push_back(raw_infosets_[static_cast<std::size_t>(raw)]);
          recall[static_cast<std::size_t>(raw)] = seq[static_cast<std::size_t>(src.player)];
        } else if (recall[static_cast<std::size_t>(raw)] != seq[static_cast<std::size_t>(src.player)]) {
          throw ValidationError("imperfect recall at infoset '" +
                                raw_infosets_[static_cast<std::size_t>(raw)].key + "'");
        }
        game.nodes_[static_cast<std::size_t>(new_id)].infoset = mapped;
        break;
      }
    }

    std::vector<int> kids;
    kids.reserve(src.children.size());
    for (std::size_t a = 0; a < src.children.size(); ++a) {
      auto& own = seq[static_cast<std::size_t>(std::max(src.player, 0))];
      const bool is_decision = src.kind == NodeKind::kDecision;
      if (is_decision) own.emplace_back(game.nodes_[static_cast<std::size_t>(new_id)].infoset, static_cast<int>(a));
      kids.push_back(self(self, src.children[a]));
      if (is_decision) own.pop_back();
    }
    game.nodes_[static_cast<std::size_t>(new_id)].children = std::move(kids);
    return new_id;
  };
  visit(visit, root);

  std::size_t offset = 0;
  for (std::size_t i = 0; i < game.infosets_.size(); ++i) {
    game.infosets_[i].offset = offset;
    offset += game.infosets_[i].actions.size();
    game.index_.emplace(game.infosets_[i].key, static_cast<int>(i));
  }
  game.num_slots_ = offset;
  game.utility_range_ = umax - umin;
  return game;
}

/// Behavioral strategy keyed by InfoSetKey, one map per player.
struct StrategyProfile {
  std::array<std::map<std::string, std::vector<double>>, kNumPlayers> policies;
};

/// Dense behavioral profile over a specific game: slot `infoset.offset + a`
/// holds the probability of action `a`.
class TabularPolicy {
 public:
  TabularPolicy() = default;
  explicit TabularPolicy(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::span<const double> at(const InfoSet& info) const {
    return std::span<const double>(probs_).subspan(info.offset, info.actions.size());
  }
  std::span<double> at(const InfoSet& info) {
    return std::span<double>(probs_).subspan(info.offset, info.actions.size());
  }
  std::span<const double> slots() const noexcept { return probs_; }
  std::span<double> slots() noexcept { return probs_; }

 private:
  std::vector<double> probs_;
};

inline TabularPolicy uniform_policy(const Game& game) {
  TabularPolicy policy(std::vector<double>(game.num_slots(), 0.0));
  for (const auto& info : game.infosets()) {
    auto probs = policy.at(info);
    std::fill(probs.begin(), probs.end(), 1.0 / static_cast<double>(info.num_actions()));
  }
  return policy;
}

/// Resolves a keyed profile against a game. Throws MissingInfoSet for any
/// absent infoset and ValidationError for malformed distributions.
inline TabularPolicy to_tabular(const Game& game, const StrategyProfile& profile) {
  TabularPolicy policy(std::vector<double>(game.num_slots(), 0.0));
  for (const auto& info : game.infosets()) {
    const auto& table = profile.policies[static_cast<std::size_t>(info.player)];
    auto it = table.find(info.key);
    if (it == table.end()) throw MissingInfoSet(info.key);
    if (it->second.size() != info.actions.size())
      throw ValidationError("wrong action count at infoset '" + info.key + "'");
    double total = 0.0;
    for (double p : it->second) {
      if (!(p >= 0.0)) throw ValidationError("negative probability at infoset '" + info.key + "'");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw ValidationError("probabilities at infoset '" + info.key + "' do not sum to 1");
    std::copy(it->second.begin(), it->second.end(), policy.at(info).begin());
  }
  return policy;
}

inline StrategyProfile to_profile(const Game& game, const TabularPolicy& policy) {
  StrategyProfile profile;
  for (const auto& info : game.infosets()) {
    auto probs = policy.at(info);
    profile.policies[static_cast<std::size_t>(info.player)].emplace(
        info.key, std::vector<double>(probs.begin(), probs.end()));
  }
  return profile;
}

/// Profile where seat 1 plays `seat1` and seat 2 plays `seat2`.
inline TabularPolicy combine(const Game& game, const TabularPolicy& seat1, const TabularPolicy& seat2) {
  TabularPolicy out(std::vector<double>(game.num_slots(), 0.0));
  for (const auto& info : game.infosets()) {
    auto src = (info.player == 0 ? seat1 : seat2).at(info);
    std::copy(src.begin(), src.end(), out.at(info).begin());
  }
  return out;
}

struct InfoSetEntry {
  int player = 0;
  std::string key;
  int action_count = 0;
};

/// One entry per distinct infoset in depth-first order, children visited in action order.
inline std::vector<InfoSetEntry> enumerate_infosets(const Game& game) {
  std::vector<InfoSetEntry> out;
  std::vector<bool> seen(game.infosets().size(), false);
  auto walk = [&](auto&& self, int id) -> void {
    const GameNode& n = game.node(id);
    if (n.kind == NodeKind::kDecision && !seen[static_cast<std::size_t>(n.infoset)]) {
      seen[static_cast<std::size_t>(n.infoset)] = true;
      const InfoSet& info = game.infoset(n.infoset);
      out.push_back({info.player, info.key, info.num_actions()});
    }
    for (int c : n.children) self(self, c);
  };
  walk(walk, Game::root());
  return out;
}

/// Reach probabilities of a node split into each player's own contribution and chance.
struct Reach {
  std::array<double, kNumPlayers> player{1.0, 1.0};
  double chance = 1.0;

  /// pi_{-i}: opponent times chance.
  double others(int i) const noexcept { return player[static_cast<std::size_t>(1 - i)] * chance; }
  double total() const noexcept { return player[0] * player[1] * chance; }
};

/// Visits every node once in pre-order as `visitor(node_id, reach)` and
/// returns the visitor.
template <class Visitor>
Visitor reach_traverse(const Game& game, const TabularPolicy& policy, Visitor visitor) {
  auto walk = [&](auto&& self, int id, const Reach& reach) -> void {
    visitor(id, reach);
    const GameNode& n = game.node(id);
    switch (n.kind) {
      case NodeKind::kTerminal:
        return;
      case NodeKind::kChance:
        for (std::size_t a = 0; a < n.children.size(); ++a) {
          Reach next = reach;
          next.chance *= n.chance_probs[a];
          self(self, n.children[a], next);
        }
        return;
      case NodeKind::kDecision: {
        auto probs = policy.at(game.infoset(n.infoset));
        for (std::size_t a = 0; a < n.children.size(); ++a) {
          Reach next = reach;
          next.player[static_cast<std::size_t>(n.player)] *= probs[a];
          self(self, n.children[a], next);
        }
        return;
      }
    }
  };
  walk(walk, Game::root(), Reach{});
  return visitor;
}

template <class Visitor>
Visitor reach_traverse(const Game& game, const StrategyProfile& profile, Visitor visitor) {
  return reach_traverse(game, to_tabular(game, profile), std::move(visitor));
}

/// Exact expected utility per player under a profile.
inline Utility expected_value(const Game& game, const TabularPolicy& policy) {
  auto walk = [&](auto&& self, int id) -> Utility {
    const GameNode& n = game.node(id);
    if (n.kind == NodeKind::kTerminal) return n.utility;
    std::span<const double> weights =
        n.kind == NodeKind::kChance ? std::span<const double>(n.chance_probs)
                                    : policy.at(game.infoset(n.infoset));
    Utility value{};
    for (std::size_t a = 0; a < n.children.size(); ++a) {
      if (weights[a] == 0.0) continue;
      Utility child = self(self, n.children[a]);
      for (int p = 0; p < kNumPlayers; ++p) value[static_cast<std::size_t>(p)] += weights[a] * child[static_cast<std::size_t>(p)];
    }
    return value;
  };
  return walk(walk, Game::root());
}

inline Utility expected_value(const Game& game, const StrategyProfile& profile) {
  return expected_value(game, to_tabular(game, profile));
}

}  // namespace fregret

#endif  // FREGRET_GAME_HPP
