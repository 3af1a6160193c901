#include "liplab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "liplab/regret.hpp"

namespace liplab {

MixedProfile uniform_profile(int n, int m) {
  if (n < 1 || m < 2) throw InputError("need n >= 1 players and m >= 2 actions");
  MixedProfile p;
  p.dists.assign(n, std::vector<double>(m, 1.0 / static_cast<double>(m)));
  return p;
}

PureProfile best_response_to_uniform(QueryLedger& ledger, const Game& g) {
  if (g.actions() != 2) throw InputError("best-response-to-uniform is binary-action only");
  const int n = g.players();
  const MixedProfile uniform = uniform_profile(n, 2);
  const DistQuerySpec exact{0.0, 1.0 / 2.0, 0.5};
  const PerturbationAdversary honest = zero_adversary();
  PureProfile out(std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    double best_value = -1.0;
    for (int j = 0; j < 2; ++j) {
      MixedProfile probe = uniform;
      probe.dists[i] = {0.0, 0.0};
      probe.dists[i][j] = 1.0;
      const double value = query_distribution_adversarial(ledger, g, probe, exact, honest)[i];
      if (value > best_value) {
        best_value = value;
        out[i] = j;
      }
    }
  }
  return out;
}

std::optional<PureProfile> brute_force_pure(const Game& g, double epsilon) {
  const int n = g.players();
  const int m = g.actions();
  require_enumerable(n, m);
  PureProfile a(std::vector<int>(n, 0));
  PureProfile dev;
  do {
    bool ok = true;
    dev = a;
    for (int i = 0; i < n && ok; ++i) {
      const double realized = g.payoff(i, a);
      for (int j = 0; j < m; ++j) {
        if (j == a[i]) continue;
        dev[i] = j;
        if (g.payoff(i, dev) - realized > epsilon + kTol) {
          ok = false;
          break;
        }
      }
      dev[i] = a[i];
    }
    if (ok) return a;
  } while (next_profile(a, m));
  return std::nullopt;
}

std::optional<PureProfile> brute_force_pure(QueryLedger& ledger, const Game& g, double epsilon) {
  const int n = g.players();
  const int m = g.actions();
  require_enumerable(n, m);
  std::unordered_map<std::uint64_t, std::vector<double>> cache;
  auto bought = [&](const PureProfile& a) -> const std::vector<double>& {
    auto [it, inserted] = cache.try_emplace(profile_index(a, m));
    if (inserted) it->second = query_profile(ledger, g, a);
    return it->second;
  };
  PureProfile a(std::vector<int>(n, 0));
  PureProfile dev;
  do {
    bool ok = true;
    dev = a;
    for (int i = 0; i < n && ok; ++i) {
      const double realized = bought(a)[i];
      for (int j = 0; j < m; ++j) {
        if (j == a[i]) continue;
        dev[i] = j;
        if (bought(dev)[i] - realized > epsilon + kTol) {
          ok = false;
          break;
        }
      }
      dev[i] = a[i];
    }
    if (ok) return a;
  } while (next_profile(a, m));
  return std::nullopt;
}

PureScan min_pure_epsilon(const Game& g) {
  const int n = g.players();
  const int m = g.actions();
  require_enumerable(n, m);
  PureScan scan;
  scan.min_epsilon = 2.0;
  PureProfile a(std::vector<int>(n, 0));
  PureProfile dev;
  do {
    double worst = 0.0;
    dev = a;
    for (int i = 0; i < n && worst < scan.min_epsilon; ++i) {
      const double realized = g.payoff(i, a);
      for (int j = 0; j < m; ++j) {
        if (j == a[i]) continue;
        dev[i] = j;
        worst = std::max(worst, g.payoff(i, dev) - realized);
      }
      dev[i] = a[i];
    }
    if (worst < scan.min_epsilon) {
      scan.min_epsilon = worst;
      scan.argmin = a;
    }
  } while (next_profile(a, m));
  return scan;
}

Game make_dominant_action_game(int n, int m) {
  return Game(n, m, GameKind::structured, std::nullopt,
              [](int player, const PureProfile& a) { return a[player] == 0 ? 1.0 : 0.0; },
              "dominant_action",
              "{\"type\":\"dominant_action\",\"n\":" + std::to_string(n) +
                  ",\"m\":" + std::to_string(m) + "}");
}

namespace {

// Pairwise-interaction payoffs with per-player influence caps: the terms
// involving player t range over [0, min(1, (n-1) lambda_t)], so switching t
// moves any other payoff by at most lambda_t, and payoffs stay in [0, 1].
Game pairwise_game(int n, int m, const std::vector<double>& influence, std::uint64_t seed,
                   std::string name, std::string descriptor) {
  if (n < 1 || m < 2) throw InputError("need n >= 1 players and m >= 2 actions");
  if (static_cast<int>(influence.size()) != n) {
    throw InputError("need one influence bound per player");
  }
  for (double l : influence) {
    if (l < 0.0 || l > 1.0) throw InputError("influence bounds must lie in [0, 1]");
  }
  if (n == 1) {
    return Game(1, m, GameKind::structured, std::nullopt,
                [](int, const PureProfile&) { return 0.0; }, std::move(name), std::move(descriptor));
  }
  Rng rng(mix_seed(seed, 0xb10c));
  const double others = static_cast<double>(n - 1);
  auto table = std::make_shared<std::vector<double>>(
      static_cast<std::size_t>(n) * n * m * m, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < n; ++t) {
      if (t == i) continue;
      const double range = std::min(1.0, others * influence[t]);
      for (int ji = 0; ji < m; ++ji) {
        for (int jt = 0; jt < m; ++jt) {
          (*table)[((static_cast<std::size_t>(i) * n + t) * m + ji) * m + jt] =
              range * uniform_unit(rng);
        }
      }
    }
  }
  auto fn = [table, n, m, others](int player, const PureProfile& a) {
    CompensatedSum sum;
    for (int t = 0; t < n; ++t) {
      if (t == player) continue;
      sum.add((*table)[((static_cast<std::size_t>(player) * n + t) * m + a[player]) * m + a[t]]);
    }
    return sum.value() / others;
  };
  const double lambda = *std::max_element(influence.begin(), influence.end());
  return Game(n, m, GameKind::structured, lambda > 0.0 ? std::optional<double>(lambda) : std::nullopt,
              fn, std::move(name), std::move(descriptor));
}

}  // namespace

Game random_lipschitz_game(const GeneratorConfig& config) {
  if (config.lambda <= 0.0 || config.lambda > 1.0) {
    throw InputError("lambda must lie in (0, 1]");
  }
  return pairwise_game(
      config.n, config.m, std::vector<double>(config.n, config.lambda), config.seed,
      "random_lipschitz",
      "{\"type\":\"random_lipschitz\",\"n\":" + std::to_string(config.n) +
          ",\"m\":" + std::to_string(config.m) + ",\"lambda\":" + format_double(config.lambda) +
          ",\"seed\":" + std::to_string(config.seed) + "}");
}

Game random_multi_lipschitz_game(int n, int m, const std::vector<double>& lambdas,
                                 std::uint64_t seed) {
  return pairwise_game(n, m, lambdas, seed, "random_multi_lipschitz", "");
}

}  // namespace liplab
