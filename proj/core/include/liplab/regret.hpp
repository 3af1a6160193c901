#pragma once

#include "liplab/game.hpp"
#include "liplab/types.hpp"

namespace liplab {

// u_i(j, p_-i): expected payoff to `player` for playing `action` while the
// others draw independently from `p` (row `player` of `p` is ignored).
// Exact summation over all m^(n-1) opponent profiles; enumeration-guarded.
double expected_payoff_action(const Game&, int player, int action, const MixedProfile& p);

// u_i(p) for every player, computed as sum_j p_ij * u_i(j, p_-i).
std::vector<double> expected_payoffs(const Game&, const MixedProfile& p);

// Regret of each player at a pure profile: best payoff among own deviations
// minus the realised payoff.
RegretReport regret_pure(const Game&, const PureProfile&);

// reg_i(p) = max_j u_i(j, p_-i) - u_i(p).
RegretReport regret_mixed(const Game&, const MixedProfile&);

// Well-supported variant: worst shortfall over the actions a player actually
// randomises over.
RegretReport regret_well_supported(const Game&, const MixedProfile&);

// Swap regret against the best deviation map, via the per-recommendation
// decomposition: reg_i = sum_j max(0, max_j' gain(i, j -> j')).  Equals the
// brute-force maximum over all m^m deviation maps.
RegretReport regret_correlated(const Game&, const CorrelatedDistribution&);

struct EquilibriumCheck {
  bool satisfied = false;
  RegretReport report;
};

EquilibriumCheck is_equilibrium(const Game&, const PureProfile&, double epsilon);
// concept must be Concept::ane or Concept::wsne.
EquilibriumCheck is_equilibrium(const Game&, const MixedProfile&, double epsilon, Concept kind);
EquilibriumCheck is_equilibrium(const Game&, const CorrelatedDistribution&, double epsilon);
// Dispatches on the held alternative; throws InputError when the concept does
// not match the profile kind.
EquilibriumCheck is_equilibrium(const Game&, const AnyProfile&, double epsilon, Concept kind);

// Smallest Lipschitz parameter consistent with the game: the largest payoff
// change any player sees when a single *other* player switches action.
// Exhaustive over all profiles; enumeration-guarded.
double measure_lipschitz(const Game&);

// Largest payoff change any other player sees when `player` switches action.
// The per-player analogue of measure_lipschitz.
double measure_player_influence(const Game&, int player);

}  // namespace liplab
