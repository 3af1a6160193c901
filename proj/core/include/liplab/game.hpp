#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liplab/types.hpp"

namespace liplab {

enum class GameKind { explicit_tensor, structured };

/// An n-player, m-action game exposed as a payoff oracle.  Payoffs live in
/// [0,1].  Instances are immutable after construction and cheap to copy; the
/// payoff rule is shared.
class Game {
 public:
  using PayoffFn = std::function<double(int player, const PureProfile&)>;

  Game(int players, int actions, GameKind kind, std::optional<double> declared_lambda,
       PayoffFn payoff, std::string name, std::string descriptor = "");

  int players() const { return players_; }
  int actions() const { return actions_; }
  GameKind kind() const { return kind_; }
  // Claimed Lipschitz parameter: any single opponent's deviation moves a
  // payoff by at most this much.
  const std::optional<double>& declared_lipschitz() const { return declared_lambda_; }
  const std::string& name() const { return name_; }
  // Canonical JSON of the construction when the game came from a structured
  // rule; empty for ad-hoc oracles.
  const std::string& descriptor() const { return descriptor_; }

  // Payoff of one player at a pure profile.  Validates the profile and checks
  // the [0,1] contract.
  double payoff(int player, const PureProfile& a) const;
  // Payoff vector for all players.
  std::vector<double> payoffs(const PureProfile& a) const;

 private:
  int players_;
  int actions_;
  GameKind kind_;
  std::optional<double> declared_lambda_;
  PayoffFn payoff_;
  std::string name_;
  std::string descriptor_;
};

// Raw (uncharged) evaluation; identical to Game::payoffs but named to stand
// apart from the charged query operations.
std::vector<double> eval_payoffs(const Game&, const PureProfile&);

// Row-major flat index: player 0 most significant, last player fastest.
std::uint64_t profile_index(const PureProfile&, int m);
PureProfile profile_from_index(std::uint64_t idx, int n, int m);
// Lexicographic odometer; returns false once the profile wraps to all-zeros.
bool next_profile(PureProfile&, int m);

// payoffs[player * m^n + profile_index] in [0,1].
Game make_explicit_game(int n, int m, std::vector<double> payoffs,
                        std::optional<double> declared_lambda = std::nullopt,
                        std::string name = "explicit");

Game make_constant_game(int n, int m, double value = 0.0);

// Materializes any oracle into an explicit tensor (enumeration-guarded).
Game to_explicit(const Game&);

// Multiplies every payoff (and the declared Lipschitz parameter) by c in
// (0,1].  Regrets of every profile scale by exactly c.
Game scale_game(const Game&, double c);

}  // namespace liplab
