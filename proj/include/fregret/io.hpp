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

#ifndef FREGRET_IO_HPP
#define FREGRET_IO_HPP

// Strategy files and CSV logs.
//
// Strategy file:
//   # fregret-strategy v1 game=<id> exploit_convention=sum
//   <infoset_key>,<action_index>,<probability>
// with body lines sorted by key, then action. Reals everywhere are written
// with 17 significant digits.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fregret/cfr.hpp"
#include "fregret/error.hpp"
#include "fregret/eval.hpp"
#include "fregret/game.hpp"
#include "fregret/rcfr.hpp"
#include "fregret/regret.hpp"

namespace fregret {

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr const char* kStrategyMagic = "# fregret-strategy v1 game=";
inline constexpr const char* kExploitNote = "# exploit_convention=sum units=chips";

inline void write_strategy(std::ostream& out, const Game& game, const TabularPolicy& policy) {
  out << kStrategyMagic << game.id() << " exploit_convention=sum\n";
  std::map<std::string, const InfoSet*> sorted;
  for (const auto& info : game.infosets()) sorted.emplace(info.key, &info);
  for (const auto& [key, info] : sorted) {
    auto probs = policy.at(*info);
    for (std::size_t a = 0; a < probs.size(); ++a) out << key << ',' << a << ',' << format_real(probs[a]) << '\n';
  }
}

inline std::string strategy_to_string(const Game& game, const TabularPolicy& policy) {
  std::ostringstream out;
  write_strategy(out, game, policy);
  return out.str();
}

/// Game id named in a strategy file header.
inline std::string read_strategy_game(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("line 1: empty strategy file");
  const std::string magic = kStrategyMagic;
  if (line.rfind(magic, 0) != 0) throw ValidationError("line 1: missing '# fregret-strategy v1' header");
  const std::string rest = line.substr(magic.size());
  return rest.substr(0, rest.find(' '));
}

/// Reads a strategy for `game`. Rejects unknown keys, bad action indices,
/// duplicates, missing infosets and distributions off by more than 1e-6.
inline TabularPolicy read_strategy(std::istream& in, const Game& game) {
  const std::string id = read_strategy_game(in);
  if (id != game.id()) throw ValidationError("line 1: strategy is for game '" + id + "', expected '" + game.id() + "'");

  std::vector<double> probs(game.num_slots(), 0.0);
  std::vector<bool> seen(game.num_slots(), false);
  std::string line;
  int line_no = 1;
  auto fail = [&](const std::string& why) { return ValidationError("line " + std::to_string(line_no) + ": " + why); };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c2 = line.rfind(',');
    const auto c1 = c2 == std::string::npos || c2 == 0 ? std::string::npos : line.rfind(',', c2 - 1);
    if (c1 == std::string::npos) throw fail("expected 'infoset_key,action_index,probability'");
    const std::string key = line.substr(0, c1);
    const std::string action_text = line.substr(c1 + 1, c2 - c1 - 1);
    const std::string prob_text = line.substr(c2 + 1);
    const auto index = game.find_infoset(key);
    if (!index) throw fail("unknown infoset '" + key + "' for game " + game.id());
    const InfoSet& info = game.infoset(*index);
    std::size_t used = 0;
    long action = -1;
    double p = 0.0;
    try {
      action = std::stol(action_text, &used);
      if (used != action_text.size()) action = -1;
      p = std::stod(prob_text, &used);
      if (used != prob_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw fail("bad number");
    }
    if (action < 0 || action >= info.num_actions()) throw fail("action index out of range at '" + key + "'");
    if (!(p >= 0.0 && p <= 1.0 + 1e-6)) throw fail("probability out of range at '" + key + "'");
    const std::size_t slot = info.offset + static_cast<std::size_t>(action);
    if (seen[slot]) throw fail("duplicate entry for '" + key + "' action " + action_text);
    seen[slot] = true;
    probs[slot] = p;
  }
  for (const auto& info : game.infosets()) {
    double total = 0.0;
    for (std::size_t a = 0; a < info.actions.size(); ++a) {
      if (!seen[info.offset + a]) throw ValidationError("strategy is missing infoset '" + info.key + "'");
      total += probs[info.offset + a];
    }
    if (std::abs(total - 1.0) > 1e-6)
      throw ValidationError("probabilities at infoset '" + info.key + "' sum to " + format_real(total));
  }
  return TabularPolicy(std::move(probs));
}

inline TabularPolicy strategy_from_string(const std::string& text, const Game& game) {
  std::istringstream in(text);
  return read_strategy(in, game);
}

/// `t,exploitability,max_pos_regret_sum,wall_ms`; wall_ms is 0 unless `wall_clock`.
inline void write_cfr_log(std::ostream& out, const std::vector<CfrLogRow>& log, bool wall_clock) {
  out << kExploitNote << '\n' << "t,exploitability,max_pos_regret_sum,wall_ms\n";
  for (const auto& r : log)
    out << r.t << ',' << format_real(r.exploitability) << ',' << format_real(r.max_pos_regret_sum) << ','
        << format_real(wall_clock ? r.wall_ms : 0.0) << '\n';
}

inline void write_rcfr_log(std::ostream& out, const std::vector<RcfrLogRow>& log, bool wall_clock) {
  out << kExploitNote << '\n' << "t,exploitability,mse_p1,mse_p2,leaves_p1,leaves_p2,wall_ms\n";
  for (const auto& r : log)
    out << r.t << ',' << format_real(r.exploitability) << ',' << format_real(r.mse[0]) << ','
        << format_real(r.mse[1]) << ',' << r.leaves[0] << ',' << r.leaves[1] << ','
        << format_real(wall_clock ? r.wall_ms : 0.0) << '\n';
}

inline void write_match_csv(std::ostream& out, const MatchResult& m) {
  out << "hands,mean,stderr,seed,duplicate\n"
      << m.hands << ',' << format_real(m.mean) << ',' << format_real(m.std_error) << ',' << m.seed << ','
      << (m.duplicate ? 1 : 0) << '\n';
}

inline void write_bound_log(std::ostream& out, const std::vector<BoundLogRow>& log, bool header = true) {
  if (header) out << "t,avg_regret,bound,epsilon,seed\n";
  for (const auto& r : log)
    out << r.t << ',' << format_real(r.avg_regret) << ',' << format_real(r.bound) << ',' << format_real(r.epsilon)
        << ',' << r.seed << '\n';
}

}  // namespace fregret

#endif  // FREGRET_IO_HPP
