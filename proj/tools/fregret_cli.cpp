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

// Experiment runner.
//
//   fregret solve   --game {kuhn|leduc} --algo {cfr|rcfr} --iters N --out DIR [...]
//   fregret exploit --game G --strategy FILE
//   fregret compete --game G --a FILE --b FILE [--hands N --seed S --duplicate] [--exact]
//   fregret rrm     --matrix {rps|biased_mp} --iters N --epsilon E [--seeds K] [--log-every L]
//
// Exit codes: 0 success, 2 usage error, 3 I/O error, 4 validation error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "fregret/fregret.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kIoError = 3;
constexpr int kValidationError = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveArgs {
  std::string game;
  std::string algo;
  std::int64_t iters = 0;
  std::string estimator = "tree";
  double min_leaf = 1.0;
  int max_depth = -1;
  int ensemble_size = 10;
  std::string target_mode = "exact";
  std::string update_mode = "simultaneous";
  std::int64_t refit_every = 1;
  std::int64_t log_every = 1;
  std::uint64_t seed = 0;
  std::string out;
  bool wall_clock = false;
};

struct ExploitArgs {
  std::string game;
  std::string strategy;
};

struct CompeteArgs {
  std::string game;
  std::string a;
  std::string b;
  std::int64_t hands = 100000;
  std::uint64_t seed = 0;
  bool duplicate = false;
  bool exact = false;
};

struct RrmArgs {
  std::string matrix = "rps";
  std::int64_t iters = 10000;
  double epsilon = 0.0;
  int seeds = 1;
  std::int64_t log_every = 100;
};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

fregret::TabularPolicy load_strategy(const std::string& path, const fregret::Game& game) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  try {
    return fregret::read_strategy(in, game);
  } catch (const fregret::ValidationError& e) {
    throw fregret::ValidationError(path + ": " + e.what());
  }
}

std::string strategy_game(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  try {
    return fregret::read_strategy_game(in);
  } catch (const fregret::ValidationError& e) {
    throw fregret::ValidationError(path + ": " + e.what());
  }
}

int run_solve(const SolveArgs& args) {
  const fregret::Game game = fregret::make_game(args.game);
  const std::filesystem::path dir(args.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  fregret::TabularPolicy average;
  auto log_out = open_out(dir / "convergence.csv");
  if (args.algo == "cfr") {
    fregret::CFRConfig config;
    config.iterations = args.iters;
    config.log_every = args.log_every;
    config.update_mode = args.update_mode == "alternating" ? fregret::UpdateMode::kAlternating
                                                           : fregret::UpdateMode::kSimultaneous;
    auto result = fregret::solve(game, config);
    fregret::write_cfr_log(log_out, result.log, args.wall_clock);
    average = std::move(result.average);
  } else {
    fregret::RCFRConfig config;
    config.iterations = args.iters;
    config.log_every = args.log_every;
    config.refit_every = args.refit_every;
    config.seed = args.seed;
    config.target_mode = args.target_mode == "bootstrap" ? fregret::TargetMode::kBootstrap : fregret::TargetMode::kExact;
    static const std::map<std::string, fregret::EstimatorKind> kinds{
        {"tabular", fregret::EstimatorKind::kTabular},
        {"tree", fregret::EstimatorKind::kTree},
        {"ensemble", fregret::EstimatorKind::kEnsemble}};
    config.estimator.kind = kinds.at(args.estimator);
    config.estimator.tree.min_leaf_weight = args.min_leaf;
    config.estimator.tree.max_depth = args.max_depth;
    config.estimator.ensemble_size = args.ensemble_size;
    auto result = fregret::rcfr_solve(game, config);
    fregret::write_rcfr_log(log_out, result.log, args.wall_clock);
    average = std::move(result.average);
  }
  if (!log_out.flush()) throw IoError("write failed for convergence.csv");
  auto strategy_out = open_out(dir / "strategy.txt");
  fregret::write_strategy(strategy_out, game, average);
  if (!strategy_out.flush()) throw IoError("write failed for strategy.txt");
  return 0;
}

int run_exploit(const ExploitArgs& args) {
  const fregret::Game game = fregret::make_game(args.game);
  const auto policy = load_strategy(args.strategy, game);
  std::cout << "exploitability," << fregret::format_real(fregret::exploitability(game, policy)) << '\n';
  return 0;
}

int run_compete(const CompeteArgs& args) {
  const std::string game_a = strategy_game(args.a);
  const std::string game_b = strategy_game(args.b);
  if (game_a != game_b)
    throw fregret::ValidationError("strategy files are for different games: " + game_a + " vs " + game_b);
  const fregret::Game game = fregret::make_game(args.game);
  const auto a = load_strategy(args.a, game);
  const auto b = load_strategy(args.b, game);
  if (args.exact) {
    std::cout << "exact_ev," << fregret::format_real(fregret::exact_ev(game, a, b)) << '\n';
  } else {
    fregret::write_match_csv(std::cout, fregret::sampled_match(game, a, b, args.hands, args.seed, args.duplicate));
  }
  return 0;
}

int run_rrm(const RrmArgs& args) {
  const auto game = fregret::build_matrix(args.matrix);
  fregret::write_bound_log(std::cout, {}, true);
  for (int s = 0; s < args.seeds; ++s)
    fregret::write_bound_log(std::cout,
                             fregret::rrm_selfplay(game, args.iters, args.epsilon, static_cast<std::uint64_t>(s),
                                                   args.log_every),
                             false);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterfactual regret minimization with regret estimation"};
  app.require_subcommand(1);

  const std::vector<std::string> games{"kuhn", "leduc"};

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run CFR or RCFR and write strategy.txt and convergence.csv");
  solve_cmd->add_option("--game", solve.game)->required()->check(CLI::IsMember(games));
  solve_cmd->add_option("--algo", solve.algo)->required()->check(CLI::IsMember({"cfr", "rcfr"}));
  solve_cmd->add_option("--iters", solve.iters)->required()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--estimator", solve.estimator)->check(CLI::IsMember({"tabular", "tree", "ensemble"}));
  solve_cmd->add_option("--min-leaf", solve.min_leaf)->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--max-depth", solve.max_depth, "negative for unlimited");
  solve_cmd->add_option("--ensemble-size", solve.ensemble_size)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--target-mode", solve.target_mode)->check(CLI::IsMember({"exact", "bootstrap"}));
  solve_cmd->add_option("--update-mode", solve.update_mode)->check(CLI::IsMember({"simultaneous", "alternating"}));
  solve_cmd->add_option("--refit-every", solve.refit_every)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--log-every", solve.log_every)->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve.seed);
  solve_cmd->add_option("--out", solve.out)->required();
  solve_cmd->add_flag("--wall-clock", solve.wall_clock, "record elapsed time in wall_ms (otherwise 0)");

  ExploitArgs exploit;
  auto* exploit_cmd = app.add_subcommand("exploit", "Print the exploitability of a strategy file");
  exploit_cmd->add_option("--game", exploit.game)->required()->check(CLI::IsMember(games));
  exploit_cmd->add_option("--strategy", exploit.strategy)->required();

  CompeteArgs compete;
  auto* compete_cmd = app.add_subcommand("compete", "Evaluate strategy a against strategy b");
  compete_cmd->add_option("--game", compete.game)->required()->check(CLI::IsMember(games));
  compete_cmd->add_option("--a", compete.a)->required();
  compete_cmd->add_option("--b", compete.b)->required();
  compete_cmd->add_option("--hands", compete.hands)->check(CLI::PositiveNumber);
  compete_cmd->add_option("--seed", compete.seed);
  compete_cmd->add_flag("--duplicate", compete.duplicate);
  compete_cmd->add_flag("--exact", compete.exact);

  RrmArgs rrm;
  auto* rrm_cmd = app.add_subcommand("rrm", "Regression regret-matching self-play against the regret bound");
  rrm_cmd->add_option("--matrix", rrm.matrix)->check(CLI::IsMember({"rps", "biased_mp"}));
  rrm_cmd->add_option("--iters", rrm.iters)->check(CLI::PositiveNumber);
  rrm_cmd->add_option("--epsilon", rrm.epsilon, "max-norm error of the average-regret estimate, in chips")
      ->check(CLI::NonNegativeNumber);
  rrm_cmd->add_option("--seeds", rrm.seeds)->check(CLI::PositiveNumber);
  rrm_cmd->add_option("--log-every", rrm.log_every)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve);
    if (exploit_cmd->parsed()) return run_exploit(exploit);
    if (compete_cmd->parsed()) return run_compete(compete);
    if (rrm_cmd->parsed()) return run_rrm(rrm);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const fregret::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationError;
  }
  return kUsageError;
}
