#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liplab/game.hpp"
#include "liplab/query.hpp"
#include "liplab/types.hpp"

namespace liplab {

/// Generalized Matching Pennies over 2k players and m actions: in each pair,
/// the first player earns 1 for matching the partner, the second for
/// mismatching; other pairs never matter.  O(1) evaluation, Lipschitz 1.
Game make_matching_pennies(int pair_count, int actions);

// rho(alpha, m) = ((2 - alpha) m - 1) / (2m), the cap whose (n/2)-th power
// bounds every single profile probability in an ((m-1)/m - alpha)-approximate
// correlated equilibrium of the pairs game.  Requires 0 < alpha < (m-1)/m;
// values lie in [1/2, 1).
double rho(double alpha, int actions);

struct Lemma3Check {
  bool holds = false;
  double max_probability = 0.0;
  double cap = 0.0;  // rho^(n/2)
  PureProfile worst_profile;
};

// Verifies that X is an ((m-1)/m - alpha)-ACE of the pairs game (throws
// InputError otherwise), then checks its largest single-profile probability
// against rho^(n/2).
Lemma3Check check_lemma3_bound(const CorrelatedDistribution& X, int pair_count, int actions,
                               double alpha);

// The adversarial completion of a query log against the pairs game: logged
// profiles keep their true payoffs; on every unlogged profile the first
// player is paid 1 for playing favored_action and 0 otherwise, and everyone
// else gets 0.  Lazy oracle; nothing of size m^n is materialised.
Game build_perturbed_game(const QueryLog&, int pair_count, int actions, int favored_action);

enum class AdversaryVerdict {
  lower_bound_confirmed,  // output was an eps-ACE of the base game but the
                          // constant deviation beats it on the perturbed game
  failed_on_base_game,    // output already fails eps-ACE on the pairs game
  hypothesis_unmet,       // the algorithm exceeded the query budget
};

const char* verdict_name(AdversaryVerdict);

struct AdversaryOutcome {
  int pair_count = 0;
  int actions = 0;
  int players = 0;
  double alpha = 0.0;
  double epsilon = 0.0;  // target approximation, scaled when scale < 1
  double rho_value = 0.0;
  double bound_q = 0.0;  // (alpha/2) * rho^{-n/2}
  double scale = 1.0;

  CorrelatedDistribution output;
  QueryLog log;
  std::uint64_t q = 0;

  int favored_action = 0;    // smallest action with first-player marginal <= 1/m
  DeviationMap deviation;    // constant map onto favored_action
  double regret_achieved = 0.0;  // first player's regret under it in the perturbed game
  double u_phi = 0.0;            // unscaled deviation payoff in the perturbed game
  double u_base = 0.0;           // unscaled realised payoff in the perturbed game
  bool base_ace = false;
  bool appendix_bounds_ok = false;  // u_phi >= 1 - q rho^{n/2} and
                                    // u_base <= 1/m + q rho^{n/2} (when base_ace)
  bool dichotomy_ok = false;
  AdversaryVerdict verdict = AdversaryVerdict::hypothesis_unmet;

  // The adversarial completion the run was judged against, rebuilt from the
  // log and the favored action (unscaled).
  Game perturbed_game() const;
};

// Runs a deterministic algorithm against the (optionally scaled) pairs game,
// completes its query log adversarially, and evaluates the constant deviation
// onto the least-likely first-player action.  Within the query budget the
// output either fails eps-ACE on the base game or suffers regret > eps on the
// perturbed game.
AdversaryOutcome run_deterministic_adversary(const Algorithm&, int pair_count, int actions,
                                             double alpha, double scale = 1.0);

// Baseline algorithms for the harness.  The first three make no queries.
Algorithm baseline_uniform_output();
Algorithm baseline_point_mass();
Algorithm baseline_matched_uniform();
// Queries the first `budget` profiles in lexicographic order and outputs a
// point mass on the queried profile with the highest total payoff.
Algorithm baseline_scan_then_empirical(std::uint64_t budget);
// Best-response dynamics from the all-first-actions profile, one player per
// step in round-robin order; outputs a point mass on the final profile.
Algorithm baseline_best_response_dynamics(int rounds);
// Fixed query list and fixed output parsed from JSON:
//   {"queries": [[1,1],...], "output": {"support": [{"profile": [...],
//    "prob": ...}, ...]}}
Algorithm scripted_algorithm(const std::string& json_text);

std::vector<std::string> baseline_names();
std::optional<Algorithm> make_baseline(const std::string& name, std::uint64_t budget = 8,
                                       int rounds = 4);

}  // namespace liplab
