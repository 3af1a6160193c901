#pragma once

#include <memory>
#include <vector>

#include "liplab/game.hpp"
#include "liplab/query.hpp"
#include "liplab/types.hpp"

namespace liplab {

/// The population game induced by a base game: player i of the base game is
/// replaced by a population of sizes[i] copies, each playing the base game
/// against the aggregate behaviour of the other populations.  A member's
/// payoff never depends on its own population's other members.
class PopulationGame {
 public:
  PopulationGame(Game base, std::vector<int> sizes);

  const Game& base() const { return base_; }
  const std::vector<int>& sizes() const { return sizes_; }
  int total_players() const { return total_; }

  int population_of(int flat_player) const;
  int member_of(int flat_player) const;
  int flat_index(int population, int member) const;

  // Empirical action distribution of each population under a grand profile.
  MixedProfile aggregate(const PureProfile& grand) const;
  // Average of member strategies per population.
  MixedProfile aggregate_mixed(const MixedProfile& grand) const;

  // The induced game as a payoff oracle over total_players() players.
  // Evaluation computes the exact base-game expectation against the
  // aggregates; results are memoised (aggregate counts recur heavily).
  Game as_game() const;

  // base lambda / min size, when the base declares a Lipschitz parameter.
  std::optional<double> declared_lipschitz() const;

 private:
  struct EvalCache;
  Game base_;
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
  std::shared_ptr<EvalCache> cache_;
};

PopulationGame induce_population_game(const Game& base, const std::vector<int>& sizes);

// p*_i(j) = fraction of population i playing j.  An eps-PNE of the population
// game aggregates to an eps-WSNE of the base game.
MixedProfile aggregate_profile(const PopulationGame&, const PureProfile& grand);

// Answers one distribution query of the population game with exactly
// n*m distribution queries of the base game: for each base player i and
// action j, query "i plays j, everyone else plays their population's
// aggregate", then mix the per-action answers with each member's strategy.
// When `grand` meets a (delta, gamma)-promise the base queries meet
// (delta, gamma / max size).
std::vector<double> simulate_population_distribution_query(QueryLedger& base_ledger,
                                                           const PopulationGame&,
                                                           const MixedProfile& grand,
                                                           const DistQuerySpec&,
                                                           const PerturbationAdversary&);

// Population sizes for player-specific Lipschitz values lambda_1..lambda_n
// with total L = sum lambda_i: size_i = ceil(max{n*lambda_i/L, 1}).  The sum
// of sizes stays below 3n (the un-rounded total is at most 2n and each
// ceiling adds less than 1).
std::vector<int> multi_lipschitz_population_sizes(const std::vector<double>& lambdas);

struct ConsistentGame {
  Game game;
  double delta = 0.0;
  // Set when the base declares lambda and delta < lambda/4, the hypothesis
  // under which the completed game is (3 lambda / 2)-Lipschitz and its
  // (eps/2)-pure-equilibria transfer to eps-pure-equilibria of the base.
  bool lipschitz_certified = false;
};

// The completion of a query log: payoffs equal the reported values on logged
// profiles and the base game's ground truth everywhere else.  Every logged
// report must lie within delta of the truth and repeated queries of one
// profile must agree.
ConsistentGame build_consistent_game(const Game& base, const QueryLog&, double delta);

struct MultiLipschitzGame {
  Game base;
  std::vector<double> lambdas;  // nondecreasing per convention
  double total() const;
};

// Validates the shape, sorts the values, and, when the game is small enough
// to enumerate, checks exhaustively that switching player i never moves
// another player's payoff by more than lambdas[i].
MultiLipschitzGame make_multi_lipschitz_game(Game base, std::vector<double> lambdas);

std::vector<int> multi_lipschitz_population_sizes(const MultiLipschitzGame&);

}  // namespace liplab
