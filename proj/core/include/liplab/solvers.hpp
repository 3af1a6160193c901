#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liplab/game.hpp"
#include "liplab/query.hpp"
#include "liplab/types.hpp"

namespace liplab {

// Every player uniform over [m]; an ((m-1)/m)-approximate Nash equilibrium of
// any game, found with zero queries.
MixedProfile uniform_profile(int n, int m);

// Binary-action games: each player plays the best response to everyone else
// randomising uniformly.  Charges 2n exact distribution queries.  When the
// total interplayer influence L satisfies L < eps/n the result is an eps-ANE.
PureProfile best_response_to_uniform(QueryLedger&, const Game&);

// Deterministic lexicographic scan for a pure profile with max regret
// <= eps + 1e-12; empty when no profile qualifies.  Enumeration-guarded.
// Charges nothing: this is the certifying oracle, not an algorithm under
// test.
std::optional<PureProfile> brute_force_pure(const Game&, double epsilon);

// Ledger-charged variant for query-count experiments.  Each distinct profile
// is bought once through the ledger (checking a single candidate touches at
// most n*m profiles; a full scan at most m^n).
std::optional<PureProfile> brute_force_pure(QueryLedger&, const Game&, double epsilon);

struct PureScan {
  double min_epsilon = 0.0;  // min over profiles of max per-player regret
  PureProfile argmin;
};

// Smallest eps at which the game admits an eps-PNE, with the first
// lexicographic witness.
PureScan min_pure_epsilon(const Game&);

// u_i(a) = 1 when player i picks the first action, else 0.  The uniform
// profile has regret exactly (m-1)/m here.
Game make_dominant_action_game(int n, int m);

struct GeneratorConfig {
  int n = 2;
  int m = 2;
  double lambda = 1.0;
  std::uint64_t seed = 0;
};

// Random game that is lambda-Lipschitz by construction: payoffs are averages
// of pairwise interaction terms h_{i,i'}(a_i, a_{i'}) drawn uniformly from
// [0, min(1, (n-1) lambda)].  Reproducible from the seed.
Game random_lipschitz_game(const GeneratorConfig&);

// Pairwise scheme with per-player influence bounds: the terms involving
// player i' range over [0, min(1, (n-1) lambda_{i'})], so switching i' moves
// any other payoff by at most lambda_{i'}.
Game random_multi_lipschitz_game(int n, int m, const std::vector<double>& lambdas,
                                 std::uint64_t seed);

}  // namespace liplab
