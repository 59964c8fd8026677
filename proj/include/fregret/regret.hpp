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

#ifndef FREGRET_REGRET_HPP
#define FREGRET_REGRET_HPP

// Regret matching on a single decision, and its regression variant where the
// policy is read from an estimator of the cumulative regrets rather than
// from the regrets themselves.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <type_traits>
#include <variant>
#include <vector>

#include "fregret/error.hpp"
#include "fregret/estimator.hpp"
#include "fregret/games.hpp"

namespace fregret {

/// Distribution proportional to the positive part of `regrets`; uniform when
/// no entry is positive.
inline std::vector<double> regret_match(std::span<const double> regrets) {
  if (regrets.empty()) throw InvalidArgument("regret_match: empty regret vector");
  std::vector<double> out(regrets.size());
  double total = 0.0;
  for (std::size_t a = 0; a < regrets.size(); ++a) {
    out[a] = regrets[a] > 0.0 ? regrets[a] : 0.0;
    total += out[a];
  }
  if (total > 0.0) {
    for (double& p : out) p /= total;
  } else {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(regrets.size()));
  }
  return out;
}

struct RegretMatcher {
  std::vector<double> regrets;
  std::vector<double> cumulative_strategy;
  std::int64_t t = 0;

  RegretMatcher() = default;
  explicit RegretMatcher(std::size_t num_actions)
      : regrets(num_actions, 0.0), cumulative_strategy(num_actions, 0.0) {
    if (num_actions == 0) throw InvalidArgument("RegretMatcher needs at least one action");
  }

  std::size_t num_actions() const noexcept { return regrets.size(); }
  std::vector<double> current_strategy() const { return regret_match(regrets); }
};

namespace detail {

/// Adds u(a) - <strategy, u> to the regrets, then records the play.
inline void accumulate(RegretMatcher& state, std::span<const double> strategy, std::span<const double> payoff) {
  double expected = 0.0;
  for (std::size_t a = 0; a < payoff.size(); ++a) expected += strategy[a] * payoff[a];
  for (std::size_t a = 0; a < payoff.size(); ++a) {
    state.regrets[a] += payoff[a] - expected;
    state.cumulative_strategy[a] += strategy[a];
  }
  ++state.t;
}

inline void check_payoff(const RegretMatcher& state, std::span<const double> payoff) {
  if (payoff.size() != state.num_actions())
    throw InvalidArgument("payoff length " + std::to_string(payoff.size()) + " does not match " +
                          std::to_string(state.num_actions()) + " actions");
}

}  // namespace detail

/// One round of regret matching: play regret_match(R), observe `payoff`.
inline RegretMatcher rm_update(RegretMatcher state, std::span<const double> payoff) {
  detail::check_payoff(state, payoff);
  const auto strategy = regret_match(state.regrets);
  detail::accumulate(state, strategy, payoff);
  return state;
}

inline std::vector<double> average_strategy(const RegretMatcher& state) {
  if (state.t < 1) throw InvalidArgument("average_strategy: no rounds played");
  double total = 0.0;
  for (double w : state.cumulative_strategy) total += w;
  std::vector<double> out(state.cumulative_strategy);
  for (double& p : out) p /= total;
  return out;
}

/// Bound on max_a R^T(a) / T for regret matching driven by an estimator
/// whose error on the average regret is at most `epsilon` in the max norm
/// every round (so its cumulative-regret error before round t is at most
/// (t - 1) * epsilon):
///
///   sqrt(|A| * delta^2 / T + |A| * delta * epsilon * (T - 1) / T)
///
/// Since the played strategy is proportional to the positive part of the
/// estimate f, <f_+, r^t> = 0 for the instantaneous regret r^t, hence
///   |R^t_+|^2 <= |R^{t-1}_+|^2 + 2 <R^{t-1}_+ - f_+, r^t> + |r^t|^2
///            <= |R^{t-1}_+|^2 + 2 |A| (t - 1) epsilon delta + |A| delta^2,
/// using |r^t(a)| <= delta and the 1-Lipschitz positive part. Summing over t
/// and max_a R^T(a) <= |R^T_+|_2 gives the expression above. With
/// epsilon = 0 it is the classical delta * sqrt(|A| / T); as T grows it
/// levels off at sqrt(|A| * delta * epsilon).
inline double regret_bound(std::int64_t iterations, double delta, std::size_t num_actions, double epsilon) {
  if (iterations < 1) throw InvalidArgument("regret_bound: iterations must be positive");
  if (delta < 0.0 || epsilon < 0.0) throw InvalidArgument("regret_bound: delta and epsilon must be nonnegative");
  const double t = static_cast<double>(iterations);
  const double n = static_cast<double>(num_actions);
  return std::sqrt(n * delta * delta / t + n * delta * epsilon * (t - 1.0) / t);
}

struct NoNoise {};
/// Each predicted average regret is perturbed by U(-epsilon, epsilon).
struct BoundedLinfNoise {
  double epsilon = 0.0;
};
/// Each predicted average regret is perturbed by N(0, sd^2).
struct GaussianNoise {
  double sd = 0.0;
};
using NoiseModel = std::variant<NoNoise, BoundedLinfNoise, GaussianNoise>;

struct RRMConfig {
  NoiseModel noise = NoNoise{};
  std::uint64_t seed = 0;
};

/// Regression regret matching on one decision. Actions are featurized as
/// one-hot vectors; the estimator is refit on the true cumulative regrets
/// after every round and the policy is read from its (optionally perturbed)
/// predictions.
class RRMState {
 public:
  RRMState(std::size_t num_actions, std::unique_ptr<RegretEstimator> estimator, RRMConfig config = {})
      : matcher_(num_actions), estimator_(std::move(estimator)), config_(config), rng_(config.seed) {
    if (!estimator_) throw InvalidArgument("RRMState needs an estimator");
    std::visit(
        [](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, BoundedLinfNoise>) {
            if (!(m.epsilon >= 0.0)) throw InvalidArgument("noise epsilon must be nonnegative");
          } else if constexpr (std::is_same_v<M, GaussianNoise>) {
            if (!(m.sd >= 0.0)) throw InvalidArgument("noise sd must be nonnegative");
          }
        },
        config_.noise);
  }

  const RegretMatcher& matcher() const noexcept { return matcher_; }
  const RegretEstimator& estimator() const noexcept { return *estimator_; }

  /// Features of action `a`: the one-hot indicator.
  std::vector<double> features(std::size_t a) const {
    std::vector<double> phi(matcher_.num_actions(), 0.0);
    phi[a] = 1.0;
    return phi;
  }

  /// Estimated cumulative regrets for the next round, noise included. Draws
  /// from the generator, so call it once per round.
  std::vector<double> predicted_regrets() {
    const std::size_t n = matcher_.num_actions();
    const double scale = static_cast<double>(matcher_.t);
    std::vector<double> pred(n);
    for (std::size_t a = 0; a < n; ++a) pred[a] = estimator_->predict(features(a));
    std::visit(
        [&](const auto& m) {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, BoundedLinfNoise>) {
            std::uniform_real_distribution<double> noise(-m.epsilon, m.epsilon);
            for (double& p : pred) p += scale * noise(rng_);
          } else if constexpr (std::is_same_v<M, GaussianNoise>) {
            std::normal_distribution<double> noise(0.0, m.sd);
            for (double& p : pred) p += scale * noise(rng_);
          }
        },
        config_.noise);
    return pred;
  }

  /// Plays one round: returns the strategy used.
  std::vector<double> step(std::span<const double> payoff) {
    detail::check_payoff(matcher_, payoff);
    const auto pred = predicted_regrets();
    auto strategy = regret_match(pred);
    play(strategy, payoff);
    return strategy;
  }

  /// Records a round played with `strategy`, then refits the estimator on
  /// the updated cumulative regrets.
  void play(std::span<const double> strategy, std::span<const double> payoff) {
    detail::check_payoff(matcher_, payoff);
    if (strategy.size() != matcher_.num_actions()) throw InvalidArgument("strategy length mismatch");
    detail::accumulate(matcher_, strategy, payoff);
    Dataset data(matcher_.num_actions());
    for (std::size_t a = 0; a < matcher_.num_actions(); ++a) data.add(features(a), matcher_.regrets[a]);
    estimator_->fit(data);
  }

 private:
  RegretMatcher matcher_;
  std::unique_ptr<RegretEstimator> estimator_;
  RRMConfig config_;
  std::mt19937_64 rng_;
};

inline const RegretMatcher& rrm_step(RRMState& state, std::span<const double> payoff) {
  state.step(payoff);
  return state.matcher();
}

/// Row of the bound-experiment log (`t,avg_regret,bound,epsilon,seed`).
struct BoundLogRow {
  std::int64_t t = 0;
  double avg_regret = 0.0;  // max over players of max_a R^t(a) / t
  double bound = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

inline double max_average_regret(const RegretMatcher& m) {
  return *std::max_element(m.regrets.begin(), m.regrets.end()) / static_cast<double>(m.t);
}

/// Self-play of regression regret matching on a matrix game with exact
/// (tabular) regret estimates perturbed by bounded max-norm noise of size
/// `epsilon`. Logs every `log_every` rounds and at the last one.
inline std::vector<BoundLogRow> rrm_selfplay(const MatrixGame& game, std::int64_t iterations, double epsilon,
                                             std::uint64_t seed, std::int64_t log_every = 1) {
  if (iterations < 1 || log_every < 1) throw InvalidArgument("rrm_selfplay: iterations and log_every must be positive");
  std::mt19937_64 seeder(seed);
  const std::array<std::uint64_t, 2> seeds{seeder(), seeder()};
  RRMState row(static_cast<std::size_t>(game.rows), tabular_estimator(), {BoundedLinfNoise{epsilon}, seeds[0]});
  RRMState col(static_cast<std::size_t>(game.cols), tabular_estimator(), {BoundedLinfNoise{epsilon}, seeds[1]});
  const std::size_t n = static_cast<std::size_t>(std::max(game.rows, game.cols));

  std::vector<BoundLogRow> log;
  for (std::int64_t t = 1; t <= iterations; ++t) {
    // Both strategies come from the same-round predictions; payoffs are
    // expected utilities against the opponent's mixed strategy.
    const auto pr = row.predicted_regrets();
    const auto pc = col.predicted_regrets();
    const auto sr = regret_match(pr);
    const auto sc = regret_match(pc);
    std::vector<double> ur(static_cast<std::size_t>(game.rows), 0.0), uc(static_cast<std::size_t>(game.cols), 0.0);
    for (int r = 0; r < game.rows; ++r)
      for (int c = 0; c < game.cols; ++c) {
        ur[static_cast<std::size_t>(r)] += game.payoff(r, c) * sc[static_cast<std::size_t>(c)];
        uc[static_cast<std::size_t>(c)] -= game.payoff(r, c) * sr[static_cast<std::size_t>(r)];
      }
    row.play(sr, ur);
    col.play(sc, uc);
    if (t % log_every == 0 || t == iterations) {
      const double avg = std::max(max_average_regret(row.matcher()), max_average_regret(col.matcher()));
      log.push_back({t, avg, regret_bound(t, game.delta, n, epsilon), epsilon, seed});
    }
  }
  return log;
}

}  // namespace fregret

#endif  // FREGRET_REGRET_HPP
