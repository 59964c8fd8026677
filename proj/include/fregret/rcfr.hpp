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

#ifndef FREGRET_RCFR_HPP
#define FREGRET_RCFR_HPP

// Regression CFR: the policy at each infoset is regret matching over the
// predictions of a per-player regressor f(phi(I, a)), retrained from scratch
// on a store of regret targets. Counterfactual values and the average
// strategy are computed exactly, as in tabular CFR.

#include <array>
#include <chrono>
#include <cstdint>
#include <memory>
#include <vector>

#include "fregret/cfr.hpp"
#include "fregret/error.hpp"
#include "fregret/estimator.hpp"
#include "fregret/eval.hpp"
#include "fregret/features.hpp"
#include "fregret/game.hpp"
#include "fregret/regret.hpp"

namespace fregret {

enum class TargetMode {
  kExact,      // targets are the true cumulative counterfactual regrets
  kBootstrap,  // target = previous prediction + immediate regret
};

enum class EstimatorKind { kTabular, kTree, kEnsemble };

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::kTree;
  TreeConfig tree;
  int ensemble_size = 10;
};

struct RCFRConfig {
  std::int64_t iterations = 1;
  EstimatorSpec estimator;
  TargetMode target_mode = TargetMode::kExact;
  std::int64_t refit_every = 1;
  std::int64_t log_every = 1;
  std::uint64_t seed = 0;
};

inline std::unique_ptr<RegretEstimator> make_estimator(const EstimatorSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case EstimatorKind::kTabular:
      return std::make_unique<TabularEstimator>();
    case EstimatorKind::kTree:
      return std::make_unique<TreeEstimator>(spec.tree);
    case EstimatorKind::kEnsemble:
      return std::make_unique<TreeEnsembleEstimator>(spec.ensemble_size, seed, spec.tree);
  }
  throw InvalidArgument("unknown estimator kind");
}

class RCFRState {
 public:
  RCFRState(const Game& game, const RCFRConfig& config)
      : game_(&game),
        config_(config),
        featurizer_(game, config.estimator.kind == EstimatorKind::kTabular),
        targets_(game.num_slots(), 0.0),
        strategy_sums_(game.num_slots(), 0.0) {
    if (config.iterations < 1 || config.refit_every < 1 || config.log_every < 1)
      throw InvalidArgument("RCFRConfig: iterations, refit_every and log_every must be positive");
    for (int p = 0; p < kNumPlayers; ++p)
      estimators_[static_cast<std::size_t>(p)] = make_estimator(config.estimator, config.seed + static_cast<std::uint64_t>(p));
  }

  const Game& game() const noexcept { return *game_; }
  const RCFRConfig& config() const noexcept { return config_; }
  const Featurizer& featurizer() const noexcept { return featurizer_; }
  const RegretEstimator& estimator(int player) const { return *estimators_[static_cast<std::size_t>(player)]; }
  std::int64_t iteration() const noexcept { return t_; }

  /// Regret targets R~(I, a) by slot.
  std::span<const double> targets() const noexcept { return targets_; }
  std::span<const double> strategy_sums() const noexcept { return strategy_sums_; }

  double training_mse(int player) const { return mse_[static_cast<std::size_t>(player)]; }
  std::size_t leaves(int player) const { return estimators_[static_cast<std::size_t>(player)]->complexity(); }

  /// f(phi(I, a)) for every slot.
  std::vector<double> predictions() const {
    std::vector<double> out(game_->num_slots(), 0.0);
    for (const auto& info : game_->infosets()) {
      const auto& f = *estimators_[static_cast<std::size_t>(info.player)];
      for (std::size_t a = 0; a < info.actions.size(); ++a)
        out[info.offset + a] = f.predict(featurizer_.features(info.offset + a));
    }
    return out;
  }

  /// The training set for `player`: one row per (infoset, action) with its current target.
  Dataset dataset(int player) const {
    Dataset data(featurizer_.dim());
    for (const auto& info : game_->infosets()) {
      if (info.player != player) continue;
      for (std::size_t a = 0; a < info.actions.size(); ++a)
        data.add(featurizer_.features(info.offset + a), targets_[info.offset + a]);
    }
    return data;
  }

  /// Applies one iteration's immediate regrets; `predicted` are the
  /// predictions the iteration's policy was built from.
  void update(std::span<const double> predicted, std::span<const double> immediate, std::span<const double> sums) {
    for (std::size_t s = 0; s < targets_.size(); ++s) {
      targets_[s] = config_.target_mode == TargetMode::kExact ? targets_[s] + immediate[s] : predicted[s] + immediate[s];
      strategy_sums_[s] += sums[s];
    }
    ++t_;
    if (t_ % config_.refit_every == 0) refit();
  }

  void refit() {
    for (int p = 0; p < kNumPlayers; ++p) {
      const Dataset data = dataset(p);
      auto& f = *estimators_[static_cast<std::size_t>(p)];
      f.fit(data);
      mse_[static_cast<std::size_t>(p)] = fregret::training_mse(f, data);
    }
  }

 private:
  const Game* game_;
  RCFRConfig config_;
  Featurizer featurizer_;
  std::array<std::unique_ptr<RegretEstimator>, kNumPlayers> estimators_;
  std::vector<double> targets_;
  std::vector<double> strategy_sums_;
  std::array<double, kNumPlayers> mse_{};
  std::int64_t t_ = 0;
};

namespace detail {

inline TabularPolicy policy_from_predictions(const Game& game, std::span<const double> predicted) {
  TabularPolicy policy(std::vector<double>(game.num_slots(), 0.0));
  for (const auto& info : game.infosets()) {
    const auto probs = regret_match(predicted.subspan(info.offset, info.actions.size()));
    std::copy(probs.begin(), probs.end(), policy.at(info).begin());
  }
  return policy;
}

}  // namespace detail

/// Regret matching over the estimator's predictions at one infoset.
inline std::vector<double> rcfr_policy(const RCFRState& state, int infoset) {
  const Game& game = state.game();
  if (infoset < 0 || infoset >= static_cast<int>(game.infosets().size()))
    throw InvalidArgument("rcfr_policy: infoset index out of range");
  const InfoSet& info = game.infoset(infoset);
  const auto& f = state.estimator(info.player);
  std::vector<double> pred(info.actions.size());
  for (std::size_t a = 0; a < pred.size(); ++a) pred[a] = f.predict(state.featurizer().features(info.offset + a));
  return regret_match(pred);
}

/// The current profile at every infoset.
inline TabularPolicy rcfr_policy(const RCFRState& state) {
  return detail::policy_from_predictions(state.game(), state.predictions());
}

inline TabularPolicy rcfr_average_strategy(const RCFRState& state) {
  CfrTables view;
  view.strategy_sums.assign(state.strategy_sums().begin(), state.strategy_sums().end());
  view.regrets.assign(view.strategy_sums.size(), 0.0);
  return average_strategy(state.game(), view);
}

/// One iteration: full-width pass under the predicted-regret profile, then
/// target update and (every refit_every iterations) estimator refit.
inline void rcfr_iteration(RCFRState& state) {
  const Game& game = state.game();
  const auto predicted = state.predictions();
  const TabularPolicy policy = detail::policy_from_predictions(game, predicted);
  std::vector<double> immediate(game.num_slots(), 0.0);
  std::vector<double> sums(game.num_slots(), 0.0);
  counterfactual_pass(game, policy, {true, true}, immediate, sums);
  state.update(predicted, immediate, sums);
}

/// Row of the RCFR convergence log
/// (`t,exploitability,mse_p1,mse_p2,leaves_p1,leaves_p2,wall_ms`).
struct RcfrLogRow {
  std::int64_t t = 0;
  double exploitability = 0.0;
  std::array<double, kNumPlayers> mse{};
  std::array<std::size_t, kNumPlayers> leaves{};
  double wall_ms = 0.0;
};

struct RcfrResult {
  TabularPolicy average;
  std::vector<RcfrLogRow> log;
};

inline RcfrResult rcfr_solve(const Game& game, const RCFRConfig& config) {
  RCFRState state(game, config);
  RcfrResult result;
  const auto start = std::chrono::steady_clock::now();
  for (std::int64_t t = 1; t <= config.iterations; ++t) {
    rcfr_iteration(state);
    if (t % config.log_every == 0 || t == config.iterations) {
      RcfrLogRow row;
      row.t = t;
      row.exploitability = exploitability(game, rcfr_average_strategy(state));
      for (int p = 0; p < kNumPlayers; ++p) {
        row.mse[static_cast<std::size_t>(p)] = state.training_mse(p);
        row.leaves[static_cast<std::size_t>(p)] = state.leaves(p);
      }
      row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      result.log.push_back(row);
    }
  }
  result.average = rcfr_average_strategy(state);
  return result;
}

}  // namespace fregret

#endif  // FREGRET_RCFR_HPP
