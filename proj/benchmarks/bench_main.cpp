#include <benchmark/benchmark.h>

#include <cmath>

#include "liplab/hard_games.hpp"
#include "liplab/lp.hpp"
#include "liplab/query.hpp"
#include "liplab/reductions.hpp"
#include "liplab/regret.hpp"
#include "liplab/solvers.hpp"

namespace {

using namespace liplab;

void BM_SwapRegretUniform(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Game g = make_matching_pennies(k, 2);
  const CorrelatedDistribution X = uniform_correlated(2 * k, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(regret_correlated(g, X).max_regret());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(X.support.size()) * state.iterations());
}
BENCHMARK(BM_SwapRegretUniform)->Arg(2)->Arg(4)->Arg(6);

void BM_BruteForcePure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double lambda = 0.3 / std::sqrt(8.0 * n * std::log(4.0 * n));
  const Game g = random_lipschitz_game({n, 2, lambda, 7});
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_pure(g, 0.3));
  }
}
BENCHMARK(BM_BruteForcePure)->Arg(8)->Arg(10)->Arg(12);

void BM_AcePolytopeExact(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Game g = make_matching_pennies(1, m);
  const PureProfile target(std::vector<int>(2, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_profile_prob_ace(g, 0.2, target).value);
  }
}
BENCHMARK(BM_AcePolytopeExact)->Arg(2)->Arg(3);

void BM_SampledDistributionQuery(benchmark::State& state) {
  const Game g = random_lipschitz_game({4, 2, 0.5, 11});
  const MixedProfile p = uniform_profile(4, 2);
  Rng rng(3);
  for (auto _ : state) {
    QueryLedger ledger;
    benchmark::DoNotOptimize(
        simulate_distribution_query(ledger, g, p, {0.1, 0.5, 0.05}, rng));
  }
}
BENCHMARK(BM_SampledDistributionQuery);

void BM_InducedPopulationEval(benchmark::State& state) {
  const Game base = random_lipschitz_game({3, 2, 0.5, 5});
  const Game induced = induce_population_game(base, {3, 3, 3}).as_game();
  PureProfile grand(std::vector<int>(9, 0));
  for (auto _ : state) {
    double total = 0.0;
    do {
      total += induced.payoff(0, grand);
    } while (next_profile(grand, 2));
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_InducedPopulationEval);

}  // namespace

BENCHMARK_MAIN();
