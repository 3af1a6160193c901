#include "liplab/regret.hpp"

#include <algorithm>
#include <cmath>

namespace liplab {

namespace {

// Walks all assignments of the players other than `player` in lexicographic
// order, with `player` pinned to `action`; invokes f(profile, weight) where
// weight is the product of the opponents' probabilities.  Zero-weight
// branches still step the odometer but contribute nothing.
template <typename F>
void for_each_opponent_assignment(int n, int m, int player, int action, const MixedProfile& p,
                                  F&& f) {
  PureProfile a(std::vector<int>(n, 0));
  a[player] = action;
  while (true) {
    double w = 1.0;
    for (int t = 0; t < n; ++t) {
      if (t == player) continue;
      w *= p.dists[t][a[t]];
      if (w == 0.0) break;
    }
    if (w > 0.0) f(a, w);
    // odometer over every slot except `player`
    int i = n - 1;
    for (; i >= 0; --i) {
      if (i == player) continue;
      if (++a[i] < m) break;
      a[i] = 0;
    }
    if (i < 0) return;
  }
}

}  // namespace

double expected_payoff_action(const Game& g, int player, int action, const MixedProfile& p) {
  const int n = g.players();
  const int m = g.actions();
  if (player < 0 || player >= n) throw InputError("player index out of range");
  if (action < 0 || action >= m) throw InputError("action index out of range");
  validate_mixed(p, n, m);
  require_enumerable(n, m);
  CompensatedSum sum;
  for_each_opponent_assignment(n, m, player, action, p,
                               [&](const PureProfile& a, double w) { sum.add(w * g.payoff(player, a)); });
  return sum.value();
}

std::vector<double> expected_payoffs(const Game& g, const MixedProfile& p) {
  const int n = g.players();
  const int m = g.actions();
  validate_mixed(p, n, m);
  std::vector<double> u(n);
  for (int i = 0; i < n; ++i) {
    CompensatedSum sum;
    for (int j = 0; j < m; ++j) {
      const double pj = p.dists[i][j];
      if (pj == 0.0) continue;
      sum.add(pj * expected_payoff_action(g, i, j, p));
    }
    u[i] = sum.value();
  }
  return u;
}

RegretReport regret_pure(const Game& g, const PureProfile& a) {
  const int n = g.players();
  const int m = g.actions();
  validate_pure(a, n, m);
  RegretReport report;
  report.kind = Concept::pne;
  report.regret.resize(n);
  report.best_action.resize(n);
  PureProfile dev = a;
  for (int i = 0; i < n; ++i) {
    const double realized = g.payoff(i, a);
    double best = realized;
    int best_j = a[i];
    for (int j = 0; j < m; ++j) {
      dev[i] = j;
      const double v = g.payoff(i, dev);
      if (v > best) {
        best = v;
        best_j = j;
      }
    }
    dev[i] = a[i];
    report.regret[i] = best - realized;
    report.best_action[i] = best_j;
  }
  return report;
}

namespace {

RegretReport regret_mixed_impl(const Game& g, const MixedProfile& p, Concept kind) {
  const int n = g.players();
  const int m = g.actions();
  validate_mixed(p, n, m);
  RegretReport report;
  report.kind = kind;
  report.regret.resize(n);
  report.best_action.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> action_value(m);
    for (int j = 0; j < m; ++j) action_value[j] = expected_payoff_action(g, i, j, p);
    double best = action_value[0];
    int best_j = 0;
    for (int j = 1; j < m; ++j) {
      if (action_value[j] > best) {
        best = action_value[j];
        best_j = j;
      }
    }
    if (kind == Concept::wsne) {
      // Worst shortfall across the support.
      double worst = 0.0;
      for (int j = 0; j < m; ++j) {
        if (p.dists[i][j] > 0.0) worst = std::max(worst, best - action_value[j]);
      }
      report.regret[i] = worst;
    } else {
      CompensatedSum realized;
      for (int j = 0; j < m; ++j) {
        if (p.dists[i][j] > 0.0) realized.add(p.dists[i][j] * action_value[j]);
      }
      report.regret[i] = best - realized.value();
    }
    report.best_action[i] = best_j;
  }
  return report;
}

}  // namespace

RegretReport regret_mixed(const Game& g, const MixedProfile& p) {
  return regret_mixed_impl(g, p, Concept::ane);
}

RegretReport regret_well_supported(const Game& g, const MixedProfile& p) {
  return regret_mixed_impl(g, p, Concept::wsne);
}

RegretReport regret_correlated(const Game& g, const CorrelatedDistribution& X) {
  const int n = g.players();
  const int m = g.actions();
  validate_correlated(X, n, m);
  RegretReport report;
  report.kind = Concept::ace;
  report.regret.resize(n);
  report.best_deviation.assign(n, DeviationMap::identity(m));
  for (int i = 0; i < n; ++i) {
    // gain[j][j'] = sum over supported profiles with recommendation j of
    // X(a) * (u_i(j', a_-i) - u_i(a))
    std::vector<std::vector<CompensatedSum>> gain(m, std::vector<CompensatedSum>(m));
    PureProfile dev;
    for (const auto& [a, prob] : X.support) {
      const int rec = a[static_cast<std::size_t>(i)];
      const double realized = g.payoff(i, a);
      dev = a;
      for (int jp = 0; jp < m; ++jp) {
        if (jp == rec) continue;
        dev[i] = jp;
        gain[rec][jp].add(prob * (g.payoff(i, dev) - realized));
      }
      dev[i] = rec;
    }
    CompensatedSum total;
    for (int j = 0; j < m; ++j) {
      double best = 0.0;  // the identity deviation gains exactly zero
      int best_target = j;
      for (int jp = 0; jp < m; ++jp) {
        if (jp == j) continue;
        const double v = gain[j][jp].value();
        if (v > best) {
          best = v;
          best_target = jp;
        }
      }
      report.best_deviation[i].phi[j] = best_target;
      if (best > 0.0) total.add(best);
    }
    report.regret[i] = total.value();
  }
  return report;
}

EquilibriumCheck is_equilibrium(const Game& g, const PureProfile& a, double epsilon) {
  EquilibriumCheck check;
  check.report = regret_pure(g, a);
  check.satisfied = check.report.max_regret() <= epsilon + kTol;
  return check;
}

EquilibriumCheck is_equilibrium(const Game& g, const MixedProfile& p, double epsilon,
                                Concept kind) {
  if (kind != Concept::ane && kind != Concept::wsne) {
    throw InputError("a mixed profile can only be checked as ane or wsne");
  }
  EquilibriumCheck check;
  check.report = regret_mixed_impl(g, p, kind);
  check.satisfied = check.report.max_regret() <= epsilon + kTol;
  return check;
}

EquilibriumCheck is_equilibrium(const Game& g, const CorrelatedDistribution& X, double epsilon) {
  EquilibriumCheck check;
  check.report = regret_correlated(g, X);
  check.satisfied = check.report.max_regret() <= epsilon + kTol;
  return check;
}

EquilibriumCheck is_equilibrium(const Game& g, const AnyProfile& profile, double epsilon,
                                Concept kind) {
  if (const auto* a = std::get_if<PureProfile>(&profile)) {
    if (kind != Concept::pne) throw InputError("a pure profile can only be checked as pne");
    return is_equilibrium(g, *a, epsilon);
  }
  if (const auto* p = std::get_if<MixedProfile>(&profile)) {
    return is_equilibrium(g, *p, epsilon, kind);
  }
  const auto& X = std::get<CorrelatedDistribution>(profile);
  if (kind != Concept::ace) {
    throw InputError("a correlated distribution can only be checked as ace");
  }
  return is_equilibrium(g, X, epsilon);
}

double measure_lipschitz(const Game& g) {
  const int n = g.players();
  const int m = g.actions();
  require_enumerable(n, m);
  if (n == 1) return 0.0;  // no other player can deviate
  double worst = 0.0;
  PureProfile a(std::vector<int>(n, 0));
  std::vector<double> u(n);
  PureProfile dev = a;
  do {
    for (int i = 0; i < n; ++i) u[i] = g.payoff(i, a);
    dev = a;
    for (int t = 0; t < n; ++t) {
      const int original = a[t];
      // Each unordered profile pair is visited once (alt > original).
      for (int alt = original + 1; alt < m; ++alt) {
        dev[t] = alt;
        for (int i = 0; i < n; ++i) {
          if (i == t) continue;
          worst = std::max(worst, std::abs(g.payoff(i, dev) - u[i]));
        }
      }
      dev[t] = original;
    }
  } while (next_profile(a, m));
  return worst;
}

double measure_player_influence(const Game& g, int player) {
  const int n = g.players();
  const int m = g.actions();
  if (player < 0 || player >= n) throw InputError("player index out of range");
  require_enumerable(n, m);
  if (n == 1) return 0.0;
  double worst = 0.0;
  PureProfile a(std::vector<int>(n, 0));
  PureProfile dev;
  do {
    dev = a;
    const int original = a[player];
    for (int alt = original + 1; alt < m; ++alt) {
      dev[player] = alt;
      for (int i = 0; i < n; ++i) {
        if (i == player) continue;
        worst = std::max(worst, std::abs(g.payoff(i, dev) - g.payoff(i, a)));
      }
    }
  } while (next_profile(a, m));
  return worst;
}

}  // namespace liplab
