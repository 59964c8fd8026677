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

#ifndef FREGRET_GAMES_HPP
#define FREGRET_GAMES_HPP

// Kuhn poker, Leduc Hold'em and small zero-sum matrix games.
//
// Infoset keys follow `p{seat}:{private rank}:{board rank or -}:{actions}`
// with seats numbered from 1 and actions written as f (fold), c (check/call)
// and r (bet/raise). Leduc round-two keys separate the rounds with '/'.

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "fregret/error.hpp"
#include "fregret/game.hpp"

namespace fregret {

inline constexpr std::string_view kRankChars = "JQK";

/// Standard Leduc Hold'em parameters.
struct LeducRules {
  static constexpr int kRanks = 3;
  static constexpr int kSuits = 2;
  static constexpr int kDeckSize = kRanks * kSuits;
  static constexpr double kAnte = 1.0;
  static constexpr std::array<double, 2> kBetSize{2.0, 4.0};  // per round
  static constexpr int kMaxWagersPerRound = 2;                // a bet and one raise
  static constexpr int kNumDeals = kDeckSize * (kDeckSize - 1) * (kDeckSize - 2);
};

struct KuhnRules {
  static constexpr int kCards = 3;
  static constexpr double kAnte = 1.0;
  static constexpr double kBetSize = 1.0;
};

namespace detail {

inline std::string infoset_key(int seat, int rank, int board_rank, const std::string& history) {
  std::string key = "p";
  key += static_cast<char>('1' + seat);
  key += ':';
  key += kRankChars[static_cast<std::size_t>(rank)];
  key += ':';
  key += board_rank < 0 ? '-' : kRankChars[static_cast<std::size_t>(board_rank)];
  key += ':';
  key += history;
  return key;
}

/// +1 if seat 1 wins the showdown, -1 if seat 2 wins, 0 on a split.
inline int leduc_showdown(int rank1, int rank2, int board_rank) {
  const bool pair1 = rank1 == board_rank;
  const bool pair2 = rank2 == board_rank;
  if (pair1 != pair2) return pair1 ? 1 : -1;
  if (rank1 == rank2) return 0;
  return rank1 > rank2 ? 1 : -1;
}

class LeducBuilder {
 public:
  GameBuilder builder{"leduc"};

  int round(int rank1, int rank2, int board, int round_index, const std::string& r1,
            const std::string& r2, std::array<double, 2> contrib, int wagers, bool facing) {
    const std::string& current = round_index == 0 ? r1 : r2;
    const int actor = static_cast<int>(current.size() % 2);
    const int other = 1 - actor;
    const std::array<int, 2> ranks{rank1, rank2};
    const std::string history = round_index == 0 ? r1 : r1 + "/" + r2;
    const std::string key = infoset_key(actor, ranks[static_cast<std::size_t>(actor)],
                                        round_index == 0 ? -1 : board, history);

    auto extend = [&](char a) {
      return round_index == 0 ? std::pair{r1 + a, r2} : std::pair{r1, r2 + a};
    };

    std::vector<char> actions;
    std::vector<int> children;
    if (facing) {
      // fold
      Utility u{};
      u[static_cast<std::size_t>(actor)] = -contrib[static_cast<std::size_t>(actor)];
      u[static_cast<std::size_t>(other)] = contrib[static_cast<std::size_t>(actor)];
      actions.push_back('f');
      children.push_back(builder.add_terminal(u));
      // call
      auto called = contrib;
      called[static_cast<std::size_t>(actor)] = called[static_cast<std::size_t>(other)];
      actions.push_back('c');
      auto [n1, n2] = extend('c');
      children.push_back(end_round(rank1, rank2, board, round_index, n1, n2, called));
    } else {
      actions.push_back('c');
      auto [n1, n2] = extend('c');
      if (current.empty()) {
        children.push_back(round(rank1, rank2, board, round_index, n1, n2, contrib, wagers, false));
      } else {
        children.push_back(end_round(rank1, rank2, board, round_index, n1, n2, contrib));
      }
    }
    if (wagers < LeducRules::kMaxWagersPerRound) {
      auto raised = contrib;
      raised[static_cast<std::size_t>(actor)] =
          contrib[static_cast<std::size_t>(other)] + LeducRules::kBetSize[static_cast<std::size_t>(round_index)];
      actions.push_back('r');
      auto [n1, n2] = extend('r');
      children.push_back(round(rank1, rank2, board, round_index, n1, n2, raised, wagers + 1, true));
    }
    return builder.add_decision(actor, key, std::move(actions), std::move(children));
  }

  int end_round(int rank1, int rank2, int board, int round_index, const std::string& r1,
                const std::string& r2, std::array<double, 2> contrib) {
    if (round_index == 0) return round(rank1, rank2, board, 1, r1, r2, contrib, 0, false);
    const int winner = leduc_showdown(rank1, rank2, board);
    const double stake = contrib[0];  // equal at showdown
    return builder.add_terminal(Utility{winner * stake, -winner * stake});
  }
};

}  // namespace detail

inline int leduc_rank(int card) { return card / LeducRules::kSuits; }

/// The Leduc deal behind root chance outcome `index`: (seat-1 card, seat-2 card, board card),
/// cards numbered rank * 2 + suit.
inline std::array<int, 3> leduc_deal(int index) {
  int i = 0;
  for (int c1 = 0; c1 < LeducRules::kDeckSize; ++c1)
    for (int c2 = 0; c2 < LeducRules::kDeckSize; ++c2)
      for (int b = 0; b < LeducRules::kDeckSize; ++b) {
        if (c1 == c2 || b == c1 || b == c2) continue;
        if (i++ == index) return {c1, c2, b};
      }
  throw InvalidArgument("Leduc deal index out of range");
}

inline Game build_leduc() {
  detail::LeducBuilder lb;
  std::vector<int> deals;
  for (int i = 0; i < LeducRules::kNumDeals; ++i) {
    auto [c1, c2, b] = leduc_deal(i);
    deals.push_back(lb.round(leduc_rank(c1), leduc_rank(c2), leduc_rank(b), 0, "", "",
                             {LeducRules::kAnte, LeducRules::kAnte}, 0, false));
  }
  std::vector<double> probs(deals.size(), 1.0 / static_cast<double>(deals.size()));
  const int root = lb.builder.add_chance(std::move(probs), std::move(deals));
  return std::move(lb.builder).build(root);
}

inline Game build_kuhn() {
  GameBuilder b("kuhn");
  std::vector<int> deals;
  for (int c1 = 0; c1 < KuhnRules::kCards; ++c1) {
    for (int c2 = 0; c2 < KuhnRules::kCards; ++c2) {
      if (c1 == c2) continue;
      const double sign = c1 > c2 ? 1.0 : -1.0;
      const double ante = KuhnRules::kAnte;
      const double called = KuhnRules::kAnte + KuhnRules::kBetSize;
      auto key = [&](int seat, const std::string& h) {
        return detail::infoset_key(seat, seat == 0 ? c1 : c2, -1, h);
      };
      // P1 checks, P2 bets, P1 decides.
      int cr = b.add_decision(0, key(0, "cr"), {'f', 'c'},
                              {b.add_terminal({-ante, ante}),
                               b.add_terminal({sign * called, -sign * called})});
      int c = b.add_decision(1, key(1, "c"), {'c', 'r'},
                             {b.add_terminal({sign * ante, -sign * ante}), cr});
      int r = b.add_decision(1, key(1, "r"), {'f', 'c'},
                             {b.add_terminal({ante, -ante}),
                              b.add_terminal({sign * called, -sign * called})});
      deals.push_back(b.add_decision(0, key(0, ""), {'c', 'r'}, {c, r}));
    }
  }
  std::vector<double> probs(deals.size(), 1.0 / static_cast<double>(deals.size()));
  const int root = b.add_chance(std::move(probs), std::move(deals));
  return std::move(b).build(root);
}

/// "kuhn" or "leduc".
inline Game make_game(std::string_view id) {
  if (id == "kuhn") return build_kuhn();
  if (id == "leduc") return build_leduc();
  throw InvalidArgument("unknown game '" + std::string(id) + "' (expected kuhn or leduc)");
}

/// Zero-sum normal-form game; `payoff(r, c)` is the row player's utility.
struct MatrixGame {
  std::string name;
  int rows = 0;
  int cols = 0;
  std::vector<double> payoffs;  // row-major
  double delta = 0.0;           // max minus min entry

  double payoff(int r, int c) const { return payoffs[static_cast<std::size_t>(r * cols + c)]; }
  int num_actions(int player) const { return player == 0 ? rows : cols; }
};

inline MatrixGame make_matrix(std::string name, const std::vector<std::vector<double>>& payoffs) {
  if (payoffs.empty() || payoffs.front().empty()) throw InvalidArgument("empty payoff matrix");
  MatrixGame g;
  g.name = std::move(name);
  g.rows = static_cast<int>(payoffs.size());
  g.cols = static_cast<int>(payoffs.front().size());
  for (const auto& row : payoffs) {
    if (static_cast<int>(row.size()) != g.cols) throw InvalidArgument("ragged payoff matrix");
    g.payoffs.insert(g.payoffs.end(), row.begin(), row.end());
  }
  auto [lo, hi] = std::minmax_element(g.payoffs.begin(), g.payoffs.end());
  g.delta = *hi - *lo;
  return g;
}

/// "rps" (rock-paper-scissors) or "biased_mp" (asymmetric matching pennies).
inline MatrixGame build_matrix(std::string_view name) {
  if (name == "rps") return make_matrix("rps", {{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}});
  if (name == "biased_mp") return make_matrix("biased_mp", {{1, -1}, {-1, 2}});
  throw InvalidArgument("unknown matrix game '" + std::string(name) + "'");
}

}  // namespace fregret

#endif  // FREGRET_GAMES_HPP
