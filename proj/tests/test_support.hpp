#pragma once

#include <vector>

#include "liplab/game.hpp"
#include "liplab/regret.hpp"
#include "liplab/types.hpp"
#include "liplab/util.hpp"

namespace liplab::testing {

inline PureProfile prof(std::vector<int> actions) { return PureProfile(std::move(actions)); }

inline Game random_explicit_game(int n, int m, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x7e57));
  const std::uint64_t space = require_enumerable(n, m);
  std::vector<double> tensor(space * static_cast<std::uint64_t>(n));
  for (auto& v : tensor) v = uniform_unit(rng);
  return make_explicit_game(n, m, std::move(tensor));
}

inline MixedProfile random_mixed(int n, int m, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x3317ed));
  MixedProfile p;
  p.dists.assign(n, std::vector<double>(m, 0.0));
  for (auto& row : p.dists) {
    double total = 0.0;
    for (auto& v : row) {
      v = 0.05 + uniform_unit(rng);
      total += v;
    }
    double running = 0.0;
    for (int j = 0; j < m - 1; ++j) {
      row[j] /= total;
      running += row[j];
    }
    row[m - 1] = 1.0 - running;  // rows sum to 1 exactly
  }
  return p;
}

inline CorrelatedDistribution random_correlated(int n, int m, int support_size,
                                                std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0xc0));
  CorrelatedDistribution X;
  std::vector<PureProfile> picked;
  for (int s = 0; s < support_size; ++s) {
    PureProfile a;
    for (int i = 0; i < n; ++i) a.actions.push_back(uniform_int_below(rng, m));
    if (X.support.count(a) == 0) {
      X.support[a] = 0.0;
      picked.push_back(a);
    }
  }
  double total = 0.0;
  for (auto& [a, prob] : X.support) {
    prob = 0.1 + uniform_unit(rng);
    total += prob;
  }
  double running = 0.0;
  std::size_t index = 0;
  for (auto& [a, prob] : X.support) {
    if (++index == X.support.size()) {
      prob = 1.0 - running;
    } else {
      prob /= total;
      running += prob;
    }
  }
  return X;
}

// Independent oracle: swap regret by enumerating all m^m deviation maps.
inline double swap_regret_brute_force(const Game& g, const CorrelatedDistribution& X, int player) {
  const int m = g.actions();
  std::vector<int> phi(m, 0);
  double best = 0.0;
  while (true) {
    double gain = 0.0;
    for (const auto& [a, prob] : X.support) {
      PureProfile dev = a;
      dev[player] = phi[a[player]];
      gain += prob * (g.payoff(player, dev) - g.payoff(player, a));
    }
    if (gain > best) best = gain;
    int slot = m - 1;
    while (slot >= 0 && ++phi[slot] == m) phi[slot--] = 0;
    if (slot < 0) break;
  }
  return best;
}

}  // namespace liplab::testing
