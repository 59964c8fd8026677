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

#ifndef FREGRET_FEATURES_HPP
#define FREGRET_FEATURES_HPP

// Features of (infoset, action) pairs for the poker games.
//
// Leduc (19 values):
//   [0]      betting round (0 or 1)
//   [1]      chips in the pot
//   [2]      bets and raises made this round
//   [3..5]   private rank one-hot (J, Q, K)
//   [6..9]   board rank one-hot (J, Q, K, none)
//   [10]     private card pairs the board
//   [11]     acting seat (0 = first to act)
//   [12..14] action one-hot (fold, check/call, bet/raise)
//   [15..18] opponent's last action this round one-hot (f, c, r, none)
//
// Kuhn (12 values): pot, private rank one-hot (3), acting seat, action
// one-hot (3), opponent's last action one-hot + none (4).
//
// Suits never appear, so deals differing only in suits share features.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fregret/error.hpp"
#include "fregret/game.hpp"
#include "fregret/games.hpp"

namespace fregret {

inline constexpr std::size_t kLeducFeatureDim = 19;
inline constexpr std::size_t kKuhnFeatureDim = 12;

inline std::size_t feature_dim(std::string_view game_id) {
  if (game_id == "leduc") return kLeducFeatureDim;
  if (game_id == "kuhn") return kKuhnFeatureDim;
  throw InvalidArgument("no feature schema for game '" + std::string(game_id) + "'");
}

/// Betting state recovered from an infoset key.
struct ParsedInfoSet {
  int seat = 0;
  int rank = 0;
  int board = -1;  // -1 before the board is revealed
  int round = 0;
  double pot = 0.0;
  int wagers = 0;        // bets/raises this round
  char last_action = 0;  // previous action this round, 0 if none
  std::vector<char> legal;
};

namespace detail {

struct BettingParams {
  std::vector<double> bet_sizes;  // per round
  int max_wagers = 0;
  double ante = 0.0;
};

inline BettingParams betting_params(std::string_view game_id) {
  if (game_id == "leduc")
    return {{LeducRules::kBetSize[0], LeducRules::kBetSize[1]}, LeducRules::kMaxWagersPerRound, LeducRules::kAnte};
  if (game_id == "kuhn") return {{KuhnRules::kBetSize}, 1, KuhnRules::kAnte};
  throw InvalidArgument("no betting rules for game '" + std::string(game_id) + "'");
}

inline int rank_index(char c) {
  auto pos = kRankChars.find(c);
  return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

}  // namespace detail

/// Parses `p{seat}:{rank}:{board|-}:{actions}` and replays the betting.
/// Throws ValidationError on any key that is not a decision point of the game.
inline ParsedInfoSet parse_infoset_key(std::string_view game_id, std::string_view key) {
  const auto params = detail::betting_params(game_id);
  auto bad = [&](const char* why) {
    return ValidationError("malformed infoset key '" + std::string(key) + "' for " + std::string(game_id) + ": " + why);
  };
  if (key.size() < 7 || key[0] != 'p' || key[2] != ':' || key[4] != ':' || key[6] != ':') throw bad("bad layout");
  ParsedInfoSet out;
  if (key[1] != '1' && key[1] != '2') throw bad("seat must be 1 or 2");
  out.seat = key[1] - '1';
  out.rank = detail::rank_index(key[3]);
  if (out.rank < 0) throw bad("unknown rank");
  if (key[5] != '-') {
    out.board = detail::rank_index(key[5]);
    if (out.board < 0) throw bad("unknown board rank");
  }

  // Split the history into rounds; every round but the last must be closed.
  std::vector<std::string_view> segments;
  std::string_view history = key.substr(7);
  for (std::size_t pos; (pos = history.find('/')) != std::string_view::npos; history.remove_prefix(pos + 1))
    segments.push_back(history.substr(0, pos));
  segments.push_back(history);
  const int rounds = static_cast<int>(params.bet_sizes.size());
  if (static_cast<int>(segments.size()) > rounds) throw bad("too many rounds");

  std::array<double, 2> contrib{params.ante, params.ante};
  int in_round = 0;
  for (std::size_t round = 0; round < segments.size(); ++round) {
    const bool last_segment = round + 1 == segments.size();
    bool facing = false;
    bool closed = false;
    out.wagers = 0;
    out.last_action = 0;
    in_round = 0;
    for (char a : segments[round]) {
      if (closed) throw bad("action after the round closed");
      const auto actor = static_cast<std::size_t>(in_round % 2);
      const auto other = 1 - actor;
      if (a == 'r') {
        if (out.wagers >= params.max_wagers) throw bad("too many raises");
        contrib[actor] = contrib[other] + params.bet_sizes[round];
        ++out.wagers;
        facing = true;
      } else if (a == 'c') {
        contrib[actor] = contrib[other];
        closed = facing || in_round == 1;
        facing = false;
      } else if (a == 'f') {
        throw bad("history reaches a terminal");
      } else {
        throw bad("unknown action character");
      }
      out.last_action = a;
      ++in_round;
    }
    if (last_segment && closed) throw bad("history ends between rounds or at a terminal");
    if (!last_segment && !closed) throw bad("round separator in the middle of a round");
    if (last_segment) {
      out.legal = facing ? std::vector<char>{'f', 'c'} : std::vector<char>{'c', 'r'};
      if (facing && out.wagers < params.max_wagers) out.legal.push_back('r');
    }
  }
  const int round = static_cast<int>(segments.size()) - 1;
  out.round = round;
  if ((round == 0) != (out.board < 0)) throw bad("board must be shown exactly in the last round");
  if (rounds == 1 && out.board >= 0) throw bad("game has no board card");
  if (in_round % 2 != out.seat) throw bad("seat is not the player to act");
  out.pot = contrib[0] + contrib[1];
  return out;
}

namespace detail {

inline int action_slot(char a) { return a == 'f' ? 0 : a == 'c' ? 1 : 2; }

}  // namespace detail

/// Feature vector of taking action `action` (an index into the infoset's
/// legal actions) at infoset `key` of game `game_id`.
inline std::vector<double> featurize(std::string_view game_id, std::string_view key, int action) {
  const ParsedInfoSet info = parse_infoset_key(game_id, key);
  if (action < 0 || action >= static_cast<int>(info.legal.size()))
    throw InvalidArgument("action index " + std::to_string(action) + " out of range at '" + std::string(key) + "'");
  const char a = info.legal[static_cast<std::size_t>(action)];
  const int last = info.last_action == 0 ? 3 : detail::action_slot(info.last_action);

  std::vector<double> phi;
  if (game_id == "leduc") {
    phi.assign(kLeducFeatureDim, 0.0);
    phi[0] = info.round;
    phi[1] = info.pot;
    phi[2] = info.wagers;
    phi[3 + static_cast<std::size_t>(info.rank)] = 1.0;
    phi[6 + static_cast<std::size_t>(info.board < 0 ? 3 : info.board)] = 1.0;
    phi[10] = info.rank == info.board ? 1.0 : 0.0;
    phi[11] = info.seat;
    phi[12 + static_cast<std::size_t>(detail::action_slot(a))] = 1.0;
    phi[15 + static_cast<std::size_t>(last)] = 1.0;
  } else {
    phi.assign(kKuhnFeatureDim, 0.0);
    phi[0] = info.pot;
    phi[1 + static_cast<std::size_t>(info.rank)] = 1.0;
    phi[4] = info.seat;
    phi[5 + static_cast<std::size_t>(detail::action_slot(a))] = 1.0;
    phi[8 + static_cast<std::size_t>(last)] = 1.0;
  }
  return phi;
}

/// Precomputed features for every (infoset, action) slot of a game. With
/// `disambiguate`, the infoset index is appended so no two slots share a
/// vector; the exact memorizer needs that because the plain schema aliases
/// some Leduc betting histories.
class Featurizer {
 public:
  Featurizer(const Game& game, bool disambiguate)
      : dim_(feature_dim(game.id()) + (disambiguate ? 1 : 0)), data_(game.num_slots() * dim_) {
    for (std::size_t i = 0; i < game.infosets().size(); ++i) {
      const InfoSet& info = game.infosets()[i];
      for (int a = 0; a < info.num_actions(); ++a) {
        auto phi = featurize(game.id(), info.key, a);
        if (disambiguate) phi.push_back(static_cast<double>(i));
        std::copy(phi.begin(), phi.end(), data_.begin() + static_cast<std::ptrdiff_t>((info.offset + static_cast<std::size_t>(a)) * dim_));
      }
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> features(std::size_t slot) const {
    return std::span<const double>(data_).subspan(slot * dim_, dim_);
  }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

}  // namespace fregret

#endif  // FREGRET_FEATURES_HPP
