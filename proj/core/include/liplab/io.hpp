#pragma once

#include <string>

#include "liplab/game.hpp"
#include "liplab/hard_games.hpp"
#include "liplab/query.hpp"
#include "liplab/regret.hpp"
#include "liplab/types.hpp"

namespace liplab {

// Game documents.  Explicit form:
//   {"n": 2, "m": 2, "payoffs": [[...m^n values for player 1...], ...]}
// with payoffs[i][idx], idx = sum_t (a_t - 1) * m^(n-t) (player 1 most
// significant, actions labelled 1..m).  Structured forms:
//   {"type": "matching_pennies", "k": 2, "m": 2}
//   {"type": "constant", "n": 2, "m": 2, "value": 0}
//   {"type": "dominant_action", "n": 3, "m": 2}
//   {"type": "random_lipschitz", "n": 4, "m": 2, "lambda": 0.5, "seed": 7}
//   {"type": "scaled", "c": 0.5, "base": {...}}
Game parse_game_json(const std::string& text);
Game load_game_file(const std::string& path);
std::string game_to_json(const Game&);

// Profile documents (actions labelled 1..m):
//   {"type": "pure", "actions": [1, 2]}
//   {"type": "mixed", "dists": [[0.5, 0.5], [0.5, 0.5]]}
//   {"type": "correlated", "support": [{"profile": [1, 1], "prob": 0.25}, ...]}
AnyProfile parse_profile_json(const std::string& text);
AnyProfile load_profile_file(const std::string& path);
std::string profile_to_json(const AnyProfile&);

// {"profile_count": ..., "dist_count": ..., "log": [{"profile": [...],
//  "reported": [...]}, ...]}
std::string ledger_to_json(const QueryLedger&);
std::string query_log_to_json(const QueryLog&);

std::string equilibrium_check_to_json(const EquilibriumCheck&, double epsilon);
std::string adversary_outcome_to_json(const AdversaryOutcome&);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace liplab
