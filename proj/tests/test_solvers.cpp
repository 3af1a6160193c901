#include <cmath>

#include "doctest.h"
#include "liplab/hard_games.hpp"
#include "liplab/lp.hpp"
#include "liplab/regret.hpp"
#include "liplab/solvers.hpp"
#include "test_support.hpp"

using namespace liplab;
using liplab::testing::prof;
using liplab::testing::random_explicit_game;

TEST_CASE("uniform profile regret never exceeds (m-1)/m") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const int m = 2 + static_cast<int>(seed % 2);
    const Game g = random_explicit_game(n, m, seed + 1000);
    const RegretReport r = regret_mixed(g, uniform_profile(n, m));
    const double cap = (static_cast<double>(m) - 1.0) / static_cast<double>(m);
    for (double value : r.regret) CHECK(value <= cap + 1e-12);
  }
  SUBCASE("matching pennies: uniform is exact") {
    CHECK(regret_mixed(make_matching_pennies(1, 2), uniform_profile(2, 2)).max_regret() <= 1e-12);
  }
  SUBCASE("the dominant-action game meets the cap exactly") {
    for (int m : {2, 3}) {
      const Game g = make_dominant_action_game(3, m);
      const RegretReport r = regret_mixed(g, uniform_profile(3, m));
      const double cap = (static_cast<double>(m) - 1.0) / static_cast<double>(m);
      for (double value : r.regret) CHECK(value == doctest::Approx(cap).epsilon(1e-14));
    }
  }
}

TEST_CASE("best response to uniform") {
  SUBCASE("binary-action only") {
    QueryLedger ledger;
    CHECK_THROWS_AS(best_response_to_uniform(ledger, make_matching_pennies(1, 3)), InputError);
  }
  SUBCASE("charges exactly 2n exact distribution queries") {
    const Game g = make_matching_pennies(2, 2);
    QueryLedger ledger;
    best_response_to_uniform(ledger, g);
    CHECK(ledger.dist_count() == 8);
    CHECK(ledger.profile_count() == 0);
  }
  SUBCASE("no interaction means zero regret") {
    const Game g = random_multi_lipschitz_game(4, 2, {0.0, 0.0, 0.0, 0.0}, 3);
    QueryLedger ledger;
    const PureProfile a = best_response_to_uniform(ledger, g);
    CHECK(regret_pure(g, a).max_regret() <= 1e-12);
  }
  SUBCASE("weak interaction yields an eps-ANE") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Game g = random_multi_lipschitz_game(4, 2, {0.01, 0.01, 0.01, 0.02}, seed);
      QueryLedger ledger;
      const PureProfile a = best_response_to_uniform(ledger, g);
      // Total influence 0.05 < eps/n for eps = 0.3; regret <= 2 * 0.05.
      CHECK(is_equilibrium(g, degenerate_mixed(a, 2), 0.3, Concept::ane).satisfied);
      CHECK(regret_pure(g, a).max_regret() <= 2.0 * 0.05 + 1e-12);
    }
  }
}

TEST_CASE("brute-force pure equilibrium scan") {
  const Game mp = make_matching_pennies(1, 2);
  SUBCASE("matching pennies has no 0.9-equilibrium but any profile works at 1") {
    CHECK_FALSE(brute_force_pure(mp, 0.9).has_value());
    const auto found = brute_force_pure(mp, 1.0);
    REQUIRE(found.has_value());
    CHECK(*found == prof({0, 0}));  // lexicographically first
  }
  SUBCASE("the constant game is everywhere an exact equilibrium") {
    const auto found = brute_force_pure(make_constant_game(3, 2, 0.5), 0.0);
    REQUIRE(found.has_value());
    CHECK(*found == prof({0, 0, 0}));
  }
  SUBCASE("whatever is returned satisfies the predicate; none means none") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const Game g = random_explicit_game(3, 2, seed + 50);
      const double eps = 0.1 + 0.15 * static_cast<double>(seed % 5);
      const auto found = brute_force_pure(g, eps);
      const PureScan scan = min_pure_epsilon(g);
      if (found) {
        CHECK(is_equilibrium(g, *found, eps).satisfied);
      } else {
        CHECK(scan.min_epsilon > eps + 1e-12);
      }
      CHECK(is_equilibrium(g, scan.argmin, scan.min_epsilon).satisfied);
    }
  }
}

TEST_CASE("the charged brute-force variant pays for what it reads") {
  const Game mp = make_matching_pennies(1, 2);
  SUBCASE("a full failed scan buys every profile once") {
    QueryLedger ledger;
    CHECK_FALSE(brute_force_pure(ledger, mp, 0.9).has_value());
    CHECK(ledger.profile_count() == 4);
  }
  SUBCASE("an immediate hit touches at most n*m profiles") {
    QueryLedger ledger;
    const auto found = brute_force_pure(ledger, make_constant_game(3, 2, 0.25), 0.0);
    REQUIRE(found.has_value());
    CHECK(*found == prof({0, 0, 0}));
    CHECK(ledger.profile_count() <= 6);
  }
  SUBCASE("charged and free scans agree") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Game g = random_explicit_game(3, 2, seed + 400);
      QueryLedger ledger;
      CHECK(brute_force_pure(ledger, g, 0.25) == brute_force_pure(g, 0.25));
    }
  }
}

TEST_CASE("existence regime of random Lipschitz games") {
  // lambda tuned to eps / sqrt(8 n ln 4n) guarantees a 0.3-equilibrium.
  const double eps = 0.3;
  for (int n : {8, 10}) {
    const double lambda = eps / std::sqrt(8.0 * n * std::log(4.0 * n));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GeneratorConfig config{n, 2, lambda, seed};
      const Game g = random_lipschitz_game(config);
      CHECK(brute_force_pure(g, eps).has_value());
    }
  }
}

TEST_CASE("random game generators") {
  SUBCASE("measured Lipschitz stays below the declared bound") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      GeneratorConfig config;
      config.n = 2 + static_cast<int>(seed % 3);
      config.m = 2 + static_cast<int>(seed % 2);
      config.lambda = 0.05 + 0.3 * static_cast<double>(seed % 3);
      config.seed = seed;
      const Game g = random_lipschitz_game(config);
      CHECK(measure_lipschitz(g) <= config.lambda + 1e-12);
      PureProfile a(std::vector<int>(config.n, 0));
      do {
        for (int i = 0; i < config.n; ++i) {
          const double v = g.payoff(i, a);
          CHECK(v >= 0.0);
          CHECK(v <= 1.0);
        }
      } while (next_profile(a, config.m));
    }
  }
  SUBCASE("per-player influence bounds hold") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const std::vector<double> lambdas{0.05, 0.1, 0.4, 0.8};
      const Game g = random_multi_lipschitz_game(4, 2, lambdas, seed);
      for (int i = 0; i < 4; ++i) {
        CHECK(measure_player_influence(g, i) <= lambdas[i] + 1e-12);
      }
    }
  }
  SUBCASE("the same seed reproduces the same game") {
    GeneratorConfig config{3, 2, 0.5, 42};
    const Game a = random_lipschitz_game(config);
    const Game b = random_lipschitz_game(config);
    PureProfile profile(std::vector<int>(3, 0));
    do {
      CHECK(a.payoffs(profile) == b.payoffs(profile));
    } while (next_profile(profile, 2));
    const Game c = random_lipschitz_game({3, 2, 0.5, 43});
    bool any_diff = false;
    profile = PureProfile(std::vector<int>(3, 0));
    do {
      if (a.payoffs(profile) != c.payoffs(profile)) any_diff = true;
    } while (next_profile(profile, 2));
    CHECK(any_diff);
  }
}

TEST_CASE("simplex solver basics") {
  SUBCASE("single bounded variable") {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.objective = {1.0};
    lp.constraints.push_back({{1.0}, Relation::le, 0.7});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.value == 0.7);
    CHECK(sol.x[0] == 0.7);
  }
  SUBCASE("infeasible pair of bounds") {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.objective = {1.0};
    lp.constraints.push_back({{1.0}, Relation::ge, 2.0});
    lp.constraints.push_back({{1.0}, Relation::le, 1.0});
    CHECK(solve_lp(lp).status == LpStatus::infeasible);
  }
  SUBCASE("unbounded ray") {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {1.0, 0.0};
    lp.constraints.push_back({{0.0, 1.0}, Relation::le, 1.0});
    CHECK(solve_lp(lp).status == LpStatus::unbounded);
  }
  SUBCASE("degenerate ties terminate") {
    // Several redundant rows pinning the same vertex.
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {1.0, 1.0};
    lp.constraints.push_back({{1.0, 1.0}, Relation::le, 1.0});
    lp.constraints.push_back({{1.0, 1.0}, Relation::le, 1.0});
    lp.constraints.push_back({{2.0, 2.0}, Relation::le, 2.0});
    lp.constraints.push_back({{1.0, 0.0}, Relation::le, 1.0});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("equality rows work") {
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {1.0, -1.0};
    lp.constraints.push_back({{1.0, 1.0}, Relation::eq, 1.0});
    lp.constraints.push_back({{1.0, 0.0}, Relation::le, 0.25});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.value == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(sol.x[0] == 0.25);
    CHECK(sol.x[1] == 0.75);
  }
  SUBCASE("float and exact modes agree") {
    LinearProgram lp;
    lp.num_vars = 3;
    lp.objective = {3.0, 1.0, 2.0};
    lp.constraints.push_back({{1.0, 1.0, 3.0}, Relation::le, 30.0});
    lp.constraints.push_back({{2.0, 2.0, 5.0}, Relation::le, 24.0});
    lp.constraints.push_back({{4.0, 1.0, 2.0}, Relation::le, 36.0});
    const LpSolution exact = solve_lp_exact(lp);
    const LpSolution approx = solve_lp_double(lp);
    REQUIRE(exact.status == LpStatus::optimal);
    REQUIRE(approx.status == LpStatus::optimal);
    CHECK(exact.value == 28.0);  // classic CLRS instance
    CHECK(approx.value == doctest::Approx(28.0).epsilon(1e-9));
  }
}

TEST_CASE("maximum profile probability over the eps-ACE polytope") {
  const Game mp = make_matching_pennies(1, 2);
  SUBCASE("the exact correlated equilibrium is unique and uniform") {
    const MaxProbResult r = max_profile_prob_ace(mp, 0.0, prof({0, 0}));
    CHECK(r.value == 0.25);
    REQUIRE(r.witness.support.size() == 4);
    for (const auto& [a, p] : r.witness.support) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("with eps = 1 nothing binds and a point mass is allowed") {
    CHECK(max_profile_prob_ace(mp, 1.0, prof({0, 0})).value == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("eps = 1/6 caps the matched cell at 11/24") {
    const MaxProbResult r = max_profile_prob_ace(mp, 1.0 / 6.0, prof({0, 0}));
    CHECK(r.value == doctest::Approx(11.0 / 24.0).epsilon(1e-12));
    CHECK(r.value < 7.0 / 12.0);
  }
  SUBCASE("eps = 1/3 attains the rho cap exactly") {
    // The closed polytope touches rho here: (2/3, 1/3) on ((1,1),(2,1)) has
    // swap regret exactly 1/3 for both players.
    const MaxProbResult r = max_profile_prob_ace(mp, 1.0 / 3.0, prof({0, 0}));
    CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("witnesses are re-verified independently for random targets") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Game g = random_explicit_game(2, 2, seed + 300);
      const double eps = 0.05 + 0.1 * static_cast<double>(seed % 3);
      Rng rng(mix_seed(seed, 77));
      const PureProfile target = prof({uniform_int_below(rng, 2), uniform_int_below(rng, 2)});
      const MaxProbResult r = max_profile_prob_ace(g, eps, target);
      CHECK(regret_correlated(g, r.witness).max_regret() <= eps + 1e-9);
      double prob = 0.0;
      if (auto it = r.witness.support.find(target); it != r.witness.support.end()) {
        prob = it->second;
      }
      CHECK(prob == doctest::Approx(r.value).epsilon(1e-9));
    }
  }
  SUBCASE("pinned slices for region traces") {
    const auto feasible = max_profile_prob_ace_pinned(mp, 0.0, prof({0, 0}), prof({1, 1}), 0.25);
    REQUIRE(feasible.has_value());
    CHECK(feasible->value == doctest::Approx(0.25).epsilon(1e-12));
    const auto infeasible = max_profile_prob_ace_pinned(mp, 0.0, prof({0, 0}), prof({1, 1}), 0.6);
    CHECK_FALSE(infeasible.has_value());
  }
  SUBCASE("the polytope LP refuses oversized games") {
    CHECK_THROWS_AS(ace_polytope_lp(make_matching_pennies(7, 2), 0.1), SizeError);
  }
}
