#include <cmath>

#include "doctest.h"
#include "liplab/hard_games.hpp"
#include "liplab/io.hpp"
#include "liplab/query.hpp"
#include "liplab/solvers.hpp"
#include "test_support.hpp"

using namespace liplab;
using liplab::testing::prof;
using liplab::testing::random_explicit_game;
using liplab::testing::random_mixed;

TEST_CASE("profile queries report exact payoffs and are counted") {
  const Game g = make_matching_pennies(1, 2);
  QueryLedger ledger;
  CHECK(ledger.profile_count() == 0);
  const auto u = query_profile(ledger, g, prof({1, 0}));
  CHECK(u == std::vector<double>{0.0, 1.0});
  CHECK(ledger.profile_count() == 1);
  CHECK(ledger.dist_count() == 0);
  // No dedup: identical queries are charged again and answered identically.
  const auto again = query_profile(ledger, g, prof({1, 0}));
  CHECK(again == u);
  CHECK(ledger.profile_count() == 2);
  CHECK(ledger.log().size() == 2);
  CHECK(ledger.log()[0].profile == prof({1, 0}));
  CHECK(ledger.log()[0].reported == u);
}

TEST_CASE("a capped ledger refuses queries past its budget") {
  const Game g = make_matching_pennies(1, 2);
  QueryLedger ledger(2);
  query_profile(ledger, g, prof({0, 0}));
  query_profile(ledger, g, prof({0, 1}));
  CHECK_THROWS_AS(query_profile(ledger, g, prof({1, 1})), BudgetError);
  CHECK(ledger.profile_count() == 2);
}

TEST_CASE("adversarial distribution queries stay inside the envelope") {
  const Game g = make_matching_pennies(1, 2);
  QueryLedger ledger;
  const MixedProfile uniform = uniform_profile(2, 2);

  SUBCASE("zero delta forces the exact answer") {
    const auto u = query_distribution_adversarial(ledger, g, uniform, {0.0, 0.5, 0.5},
                                                  truncation_adversary());
    CHECK(u == std::vector<double>{0.5, 0.5});
    CHECK(ledger.dist_count() == 1);
  }

  SUBCASE("truncation reports at most the truth") {
    const auto u = query_distribution_adversarial(ledger, g, uniform, {0.1, 0.5, 0.5},
                                                  truncation_adversary());
    CHECK(u[0] == doctest::Approx(0.4));
    CHECK(u[1] == doctest::Approx(0.4));
  }

  SUBCASE("rounding snaps to a grid inside the envelope") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Game game = random_explicit_game(2, 2, seed);
      const MixedProfile p = random_mixed(2, 2, seed);
      QueryLedger local;
      const auto truth = expected_payoffs(game, p);
      const auto reported =
          query_distribution_adversarial(local, game, p, {0.05, 0.05, 0.5}, rounding_adversary());
      for (std::size_t i = 0; i < truth.size(); ++i) {
        CHECK(std::abs(reported[i] - truth[i]) <= 0.05 + 1e-12);
        CHECK(reported[i] >= 0.0);
        CHECK(reported[i] <= 1.0);
      }
    }
  }

  SUBCASE("an adversary that leaves the envelope is a contract violation") {
    PerturbationAdversary bad{"bad", [](const std::vector<double>& truth, double delta,
                                        const QueryLog&) {
                                std::vector<double> out(truth.size());
                                for (std::size_t i = 0; i < truth.size(); ++i) {
                                  out[i] = std::min(1.0, truth[i] + 2.0 * delta + 0.01);
                                }
                                return out;
                              }};
    CHECK_THROWS_AS(
        query_distribution_adversarial(ledger, g, uniform, {0.05, 0.5, 0.5}, bad),
        ContractError);
  }

  SUBCASE("degenerate profiles are logged with their reported values") {
    QueryLedger local;
    const MixedProfile pure = degenerate_mixed(prof({0, 0}), 2);
    const auto reported =
        query_distribution_adversarial(local, g, pure, {0.25, 1.0, 0.5}, truncation_adversary());
    CHECK(reported == std::vector<double>{0.75, 0.0});
    REQUIRE(local.log().size() == 1);
    CHECK(local.log()[0].profile == prof({0, 0}));
    CHECK(local.log()[0].reported == reported);
    CHECK(local.profile_count() == 0);
    CHECK(local.dist_count() == 1);
  }
}

TEST_CASE("sample count formula") {
  // max{ln(8 * 4 / 0.05) / (1 * 0.01), 8 ln(4 * 4 / 0.05)} = 100 ln 640
  CHECK(distribution_query_sample_count(4, {0.1, 1.0, 0.05}) == 647);

  SUBCASE("monotone nonincreasing in gamma, delta and eta") {
    const DistQuerySpec base{0.1, 0.5, 0.05};
    const std::uint64_t t0 = distribution_query_sample_count(4, base);
    CHECK(distribution_query_sample_count(4, {0.2, 0.5, 0.05}) <= t0);
    CHECK(distribution_query_sample_count(4, {0.1, 0.9, 0.05}) <= t0);
    CHECK(distribution_query_sample_count(4, {0.1, 0.5, 0.2}) <= t0);
  }

  SUBCASE("stays finite toward the loose corner") {
    CHECK(distribution_query_sample_count(4, {0.999, 1.0, 0.999}) >= 1);
  }

  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(distribution_query_sample_count(4, {0.0, 1.0, 0.05}), InputError);
    CHECK_THROWS_AS(distribution_query_sample_count(4, {0.1, 0.0, 0.05}), InputError);
    CHECK_THROWS_AS(distribution_query_sample_count(4, {0.1, 1.0, 1.0}), InputError);
  }
}

TEST_CASE("sampling simulation") {
  SUBCASE("a pure profile with zero-one payoffs is reproduced exactly") {
    const Game g = make_matching_pennies(2, 2);
    QueryLedger ledger;
    Rng rng(7);
    const MixedProfile pure = degenerate_mixed(prof({0, 1, 1, 0}), 2);
    const auto estimate = simulate_distribution_query(ledger, g, pure, {0.1, 1.0, 0.05}, rng);
    CHECK(estimate == g.payoffs(prof({0, 1, 1, 0})));
    CHECK(ledger.profile_count() == 647);
    CHECK(ledger.dist_count() == 0);
  }

  SUBCASE("the gamma promise is checked eagerly") {
    const Game g = make_matching_pennies(1, 2);
    QueryLedger ledger;
    Rng rng(7);
    CHECK_THROWS_AS(
        simulate_distribution_query(ledger, g, uniform_profile(2, 2), {0.1, 0.6, 0.05}, rng),
        PromiseError);
    CHECK(ledger.profile_count() == 0);
  }

  SUBCASE("a budget below the sample count fails fast") {
    const Game g = make_matching_pennies(1, 2);
    QueryLedger ledger(100);
    Rng rng(7);
    CHECK_THROWS_AS(
        simulate_distribution_query(ledger, g, uniform_profile(2, 2), {0.1, 0.5, 0.05}, rng),
        BudgetError);
    CHECK(ledger.profile_count() == 0);
  }

  SUBCASE("envelope failures stay near the promised rate") {
    const Game g = random_explicit_game(4, 2, 2024);
    const MixedProfile p = uniform_profile(4, 2);
    const DistQuerySpec spec{0.1, 0.5, 0.05};
    const int trials = 100;
    Rng rng(99);
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
      QueryLedger ledger;
      const auto estimate = simulate_distribution_query(ledger, g, p, spec, rng);
      const auto truth = expected_payoffs(g, p);
      double err = 0.0;
      for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(estimate[i] - truth[i]));
      if (err > spec.delta) ++failures;
    }
    const double rate = static_cast<double>(failures) / trials;
    const double bound =
        spec.eta + 3.0 * std::sqrt(spec.eta * (1.0 - spec.eta) / static_cast<double>(trials));
    CHECK(rate <= bound);
  }
}

TEST_CASE("forwarding a profile algorithm through distribution queries") {
  const Game g = make_matching_pennies(2, 2);
  const Algorithm scan = baseline_scan_then_empirical(6);

  QueryLedger direct;
  const CorrelatedDistribution out_direct = run_with_profile_queries(scan, g, direct);

  SUBCASE("zero-delta forwarding reproduces the exact trace") {
    QueryLedger wrapped;
    const CorrelatedDistribution out_wrapped =
        run_with_distribution_queries(scan, g, wrapped, {0.0, 1.0, 0.5}, truncation_adversary());
    CHECK(out_wrapped.support == out_direct.support);
    CHECK(wrapped.dist_count() == direct.profile_count());
    CHECK(wrapped.profile_count() == 0);
    REQUIRE(wrapped.log().size() == direct.log().size());
    for (std::size_t i = 0; i < wrapped.log().size(); ++i) {
      CHECK(wrapped.log()[i].profile == direct.log()[i].profile);
      CHECK(wrapped.log()[i].reported == direct.log()[i].reported);
    }
  }

  SUBCASE("a perturbing adversary yields a deterministic, reproducible trace") {
    QueryLedger first;
    QueryLedger second;
    const DistQuerySpec spec{0.2, 1.0, 0.5};
    const CorrelatedDistribution a =
        run_with_distribution_queries(scan, g, first, spec, truncation_adversary());
    const CorrelatedDistribution b =
        run_with_distribution_queries(scan, g, second, spec, truncation_adversary());
    CHECK(a.support == b.support);
    REQUIRE(first.log().size() == second.log().size());
    for (std::size_t i = 0; i < first.log().size(); ++i) {
      CHECK(first.log()[i].profile == second.log()[i].profile);
      CHECK(first.log()[i].reported == second.log()[i].reported);
    }
    CHECK(first.dist_count() == direct.profile_count());
  }
}

TEST_CASE("ledger json dump") {
  const Game g = make_matching_pennies(1, 2);
  QueryLedger ledger;
  query_profile(ledger, g, prof({1, 0}));
  const std::string dump = ledger_to_json(ledger);
  CHECK(dump.find("\"profile_count\":1") != std::string::npos);
  CHECK(dump.find("\"dist_count\":0") != std::string::npos);
  CHECK(dump.find("\"profile\":[2,1]") != std::string::npos);
  CHECK(dump.find("\"reported\":[0.0,1.0]") != std::string::npos);
}
