#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "liplab/game.hpp"
#include "liplab/types.hpp"

namespace liplab {

enum class Relation { le, ge, eq };

struct LpConstraint {
  std::vector<double> coeffs;
  Relation rel = Relation::le;
  double rhs = 0.0;
};

// maximize objective . x  subject to the constraints and x >= 0.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<LpConstraint> constraints;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  std::vector<double> x;
};

// Instances up to this many variables are pivoted in exact rational
// arithmetic; larger ones fall back to floating point.
inline constexpr int kExactVarLimit = 50;

// Dense two-phase simplex with Bland's rule (termination guaranteed).
LpSolution solve_lp(const LinearProgram&);
LpSolution solve_lp_double(const LinearProgram&);
LpSolution solve_lp_exact(const LinearProgram&);

/// The eps-approximate-correlated-equilibrium polytope in epigraph form:
/// one variable per profile probability, plus one slack t_{ij} per
/// player/recommendation bounding the best conditional deviation gain, with
/// sum_j t_{ij} <= eps per player.
struct AceLp {
  LinearProgram lp;
  std::uint64_t num_profiles = 0;
  int players = 0;
  int actions = 0;

  int x_var(std::uint64_t profile_idx) const { return static_cast<int>(profile_idx); }
  int t_var(int player, int action) const {
    return static_cast<int>(num_profiles) + player * actions + action;
  }
};

// Requires m^n <= 2^12.
AceLp ace_polytope_lp(const Game&, double epsilon);

struct MaxProbResult {
  double value = 0.0;
  CorrelatedDistribution witness;
};

// Maximum probability the target profile can carry in any eps-ACE of the
// game, plus a witness distribution (independently re-verified to have swap
// regret <= eps + 1e-9).
MaxProbResult max_profile_prob_ace(const Game&, double epsilon, const PureProfile& target);

// Same, with Pr(pinned) = pinned_prob added; empty when that slice of the
// polytope is infeasible.  Used for region traces.
std::optional<MaxProbResult> max_profile_prob_ace_pinned(const Game&, double epsilon,
                                                         const PureProfile& target,
                                                         const PureProfile& pinned,
                                                         double pinned_prob);

}  // namespace liplab
