// liplab: experiment runner for query-bounded equilibrium computation in
// Lipschitz games.  Subcommands compose the library into reproducible,
// seed-driven runs with JSON/CSV outputs.
//
// Exit codes: 0 = property holds / run passed, 1 = property refuted (a
// legitimate experimental outcome), 2 = usage or I/O error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liplab/hard_games.hpp"
#include "liplab/io.hpp"
#include "liplab/lp.hpp"
#include "liplab/query.hpp"
#include "liplab/reductions.hpp"
#include "liplab/regret.hpp"
#include "liplab/solvers.hpp"

namespace {

using namespace liplab;

constexpr int kExitHolds = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    write_file(out_path, content);
  }
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) row += ',';
    row += cells[i];
  }
  return row;
}

Game game_from_option(const std::string& game_option) {
  if (!game_option.empty() && game_option.front() == '{') return parse_game_json(game_option);
  return load_game_file(game_option);
}

// ---------------------------------------------------------------------------
// verify: check a profile file against a game file at a given approximation.

struct VerifyOptions {
  std::string game;
  std::string profile;
  double epsilon = 0.0;
  std::string concept_name;
  std::string out;
};

int cmd_verify(const VerifyOptions& opt) {
  const Game game = game_from_option(opt.game);
  const AnyProfile profile = opt.profile.front() == '{' ? parse_profile_json(opt.profile)
                                                        : load_profile_file(opt.profile);
  Concept kind = Concept::ane;
  if (opt.concept_name.empty()) {
    if (std::holds_alternative<PureProfile>(profile)) kind = Concept::pne;
    if (std::holds_alternative<CorrelatedDistribution>(profile)) kind = Concept::ace;
  } else {
    const auto parsed = concept_from_name(opt.concept_name);
    if (!parsed) throw InputError("unknown concept '" + opt.concept_name + "'");
    kind = *parsed;
  }
  const EquilibriumCheck check = is_equilibrium(game, profile, opt.epsilon, kind);
  emit(opt.out, equilibrium_check_to_json(check, opt.epsilon));
  return check.satisfied ? kExitHolds : kExitRefuted;
}

// ---------------------------------------------------------------------------
// adversary: run deterministic baselines against the pairs game and its
// adversarial completion.

struct AdversaryOptions {
  std::string algorithm;
  std::string script;
  std::vector<int> pair_counts{2};
  int m = 2;
  double alpha = 0.1;
  double scale = 1.0;
  std::uint64_t budget = 8;
  int rounds = 4;
  std::string out;
  std::string format = "auto";
};

int cmd_adversary(const AdversaryOptions& opt) {
  Algorithm algorithm;
  if (opt.algorithm == "scripted") {
    if (opt.script.empty()) throw InputError("scripted algorithm needs --script");
    algorithm = scripted_algorithm(read_file(opt.script));
  } else {
    const auto named = make_baseline(opt.algorithm, opt.budget, opt.rounds);
    if (!named) {
      std::string all;
      for (const auto& n : baseline_names()) all += " " + n;
      throw InputError("unknown algorithm '" + opt.algorithm + "'; known:" + all + " scripted");
    }
    algorithm = *named;
  }

  std::vector<AdversaryOutcome> outcomes;
  outcomes.reserve(opt.pair_counts.size());
  for (int k : opt.pair_counts) {
    outcomes.push_back(run_deterministic_adversary(algorithm, k, opt.m, opt.alpha, opt.scale));
  }

  const bool csv = opt.format == "csv" || (opt.format == "auto" && outcomes.size() > 1);
  std::string content;
  if (csv) {
    std::ostringstream os;
    os << "k,m,n,alpha,epsilon,rho,q,bound_q,regret_achieved,verdict\n";
    for (const auto& o : outcomes) {
      os << csv_join({std::to_string(o.pair_count), std::to_string(o.actions),
                      std::to_string(o.players), format_double(o.alpha), format_double(o.epsilon),
                      format_double(o.rho_value), std::to_string(o.q), format_double(o.bound_q),
                      format_double(o.regret_achieved), verdict_name(o.verdict)})
         << "\n";
    }
    content = os.str();
  } else if (outcomes.size() == 1) {
    content = adversary_outcome_to_json(outcomes.front());
  } else {
    content = "[";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      if (i > 0) content += ",";
      content += adversary_outcome_to_json(outcomes[i]);
    }
    content += "]";
  }
  emit(opt.out, content);
  const bool all_ok = std::all_of(outcomes.begin(), outcomes.end(),
                                  [](const AdversaryOutcome& o) { return o.dichotomy_ok; });
  return all_ok ? kExitHolds : kExitRefuted;
}

// ---------------------------------------------------------------------------
// region: sweep the reachable (Pr(1,1), Pr(2,2)) region of the two-player
// pairs game across approximation levels.

struct RegionOptions {
  int m = 2;
  std::vector<double> alphas;
  int grid = 21;
  std::string out;
};

int cmd_region(const RegionOptions& opt) {
  if (opt.grid < 2) throw InputError("need a grid of at least 2 points");
  const Game game = make_matching_pennies(1, opt.m);
  const double top = (static_cast<double>(opt.m) - 1.0) / static_cast<double>(opt.m);
  const PureProfile target(std::vector<int>{0, 0});
  const PureProfile pinned(std::vector<int>{1, 1});

  bool red_point_ok = true;
  std::ostringstream os;
  os << "alpha,epsilon,rho,pinned_prob,feasible,max_prob\n";
  for (double alpha : opt.alphas) {
    const double epsilon = top - alpha;
    if (epsilon < -kTol) throw InputError("alpha may not exceed (m-1)/m");
    const double eps = std::max(epsilon, 0.0);
    std::string rho_cell;
    if (alpha > 0.0 && alpha < top) rho_cell = format_double(rho(alpha, opt.m));
    if (opt.m == 2 && eps == 0.0) {
      // At eps = 0 the polytope collapses to the uniform point.
      const MaxProbResult exact = max_profile_prob_ace(game, 0.0, target);
      if (std::abs(exact.value - 0.25) > 1e-9) red_point_ok = false;
    }
    for (int step = 0; step < opt.grid; ++step) {
      const double c = static_cast<double>(step) / static_cast<double>(opt.grid - 1);
      const auto result = max_profile_prob_ace_pinned(game, eps, target, pinned, c);
      os << csv_join({format_double(alpha), format_double(eps), rho_cell, format_double(c),
                      result ? "1" : "0", result ? format_double(result->value) : ""})
         << "\n";
    }
  }
  emit(opt.out, os.str());
  return red_point_ok ? kExitHolds : kExitRefuted;
}

// ---------------------------------------------------------------------------
// reduce: the population-game demonstration chain.  Either reports the
// trivial short-circuit for weakly coupled games, or runs: perturbed
// distribution queries of the population game -> consistent completion ->
// exhaustive equilibrium search -> aggregate transfer back to the base game.

struct ReduceOptions {
  std::string game;
  std::vector<double> lambdas;
  std::optional<double> total_lambda;
  std::vector<int> sizes;
  int n = 2;
  int m = 2;
  std::uint64_t seed = 0;
  double epsilon = 0.5;
  double delta = 0.0;
  double gamma = 1.0;
  std::optional<double> eta;
  std::string adversary = "truncation";
  std::string out;
};

int cmd_reduce(const ReduceOptions& opt) {
  const bool multi = opt.lambdas.size() > 1;
  std::vector<double> lambdas = opt.lambdas;
  std::sort(lambdas.begin(), lambdas.end());

  Game base = [&] {
    if (!opt.game.empty()) return game_from_option(opt.game);
    if (multi) {
      return random_multi_lipschitz_game(static_cast<int>(lambdas.size()), opt.m, lambdas,
                                         opt.seed);
    }
    GeneratorConfig config{opt.n, opt.m, opt.lambdas.empty() ? 1.0 : opt.lambdas[0], opt.seed};
    return random_lipschitz_game(config);
  }();
  const int n = base.players();
  const int m = base.actions();
  if (multi && static_cast<int>(lambdas.size()) != n) {
    throw InputError("need one Lipschitz value per player");
  }

  double total = 0.0;
  for (double l : lambdas) total += l;
  if (opt.total_lambda && std::abs(*opt.total_lambda - total) > 1e-9) {
    throw InputError("--Lambda disagrees with the sum of the given --lambda values");
  }

  std::ostringstream os;
  os << "{";
  os << "\"n\":" << n << ",\"m\":" << m << ",\"epsilon\":" << format_double(opt.epsilon);

  // Weak coupling: answer with best responses to uniform play.
  if (multi && total < opt.epsilon / static_cast<double>(n)) {
    QueryLedger ledger;
    const PureProfile answer = best_response_to_uniform(ledger, base);
    const EquilibriumCheck check =
        is_equilibrium(base, degenerate_mixed(answer, m), opt.epsilon, Concept::ane);
    os << ",\"mode\":\"short_circuit\",\"Lambda\":" << format_double(total);
    os << ",\"dist_queries\":" << ledger.dist_count();
    os << ",\"profile\":[";
    for (int i = 0; i < n; ++i) os << (i ? "," : "") << answer[i] + 1;
    os << "],\"max_regret\":" << format_double(check.report.max_regret());
    os << ",\"ane_ok\":" << (check.satisfied ? "true" : "false") << "}";
    emit(opt.out, os.str());
    return check.satisfied ? kExitHolds : kExitRefuted;
  }

  std::vector<int> sizes = opt.sizes;
  if (sizes.empty()) {
    if (!multi) throw InputError("need --sizes, or a per-player --lambda vector to derive them");
    sizes = multi_lipschitz_population_sizes(lambdas);
  }
  const PopulationGame pop = induce_population_game(base, sizes);
  const Game pop_game = pop.as_game();
  const int total_players = pop.total_players();
  require_enumerable(total_players, m);

  const auto adversary = adversary_by_name(opt.adversary);
  if (!adversary) throw InputError("unknown adversary '" + opt.adversary + "'");
  const DistQuerySpec spec{opt.delta, opt.gamma, opt.eta.value_or(0.05)};

  // Query every pure profile of the population game through the reduction.
  QueryLedger base_ledger;
  Rng rng(mix_seed(opt.seed, 0x5eed));
  QueryLog pop_log;
  std::uint64_t pop_queries = 0;
  const int max_size = *std::max_element(sizes.begin(), sizes.end());
  bool envelope_ok = true;
  {
    PureProfile grand(std::vector<int>(total_players, 0));
    do {
      const MixedProfile grand_mixed = degenerate_mixed(grand, m);
      std::vector<double> estimates;
      if (opt.eta) {
        // Sampled base answers: every (player, action) query of the base game
        // costs T profile queries charged to the same ledger.
        DistQuerySpec base_spec = spec;
        base_spec.gamma = spec.gamma / static_cast<double>(max_size);
        const MixedProfile agg = pop.aggregate_mixed(grand_mixed);
        std::vector<std::vector<double>> answers(static_cast<std::size_t>(n) * m);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < m; ++j) {
            MixedProfile query = agg;
            query.dists[i].assign(m, 0.0);
            query.dists[i][j] = 1.0;
            answers[static_cast<std::size_t>(i) * m + j] =
                simulate_distribution_query(base_ledger, base, query, base_spec, rng);
            base_ledger.record_distribution(nullptr, answers[static_cast<std::size_t>(i) * m + j]);
          }
        }
        estimates.resize(total_players);
        for (int v = 0; v < total_players; ++v) {
          const int i = pop.population_of(v);
          double mix = 0.0;
          for (int j = 0; j < m; ++j) {
            mix += grand_mixed.dists[v][j] * answers[static_cast<std::size_t>(i) * m + j][i];
          }
          estimates[v] = mix;
        }
      } else {
        estimates = simulate_population_distribution_query(base_ledger, pop, grand_mixed, spec,
                                                           *adversary);
      }
      for (int v = 0; v < total_players; ++v) {
        if (std::abs(estimates[v] - pop_game.payoff(v, grand)) > opt.delta + kTol) {
          envelope_ok = false;
        }
      }
      pop_log.push_back({grand, estimates});
      ++pop_queries;
    } while (next_profile(grand, m));
  }

  os << ",\"mode\":\"chain\",\"sizes\":[";
  for (std::size_t i = 0; i < sizes.size(); ++i) os << (i ? "," : "") << sizes[i];
  os << "],\"population_players\":" << total_players;
  os << ",\"Lambda\":" << format_double(total);
  os << ",\"delta\":" << format_double(opt.delta);
  os << ",\"pop_dist_queries\":" << pop_queries;
  os << ",\"base_dist_queries\":" << base_ledger.dist_count();
  const bool accounting_ok =
      base_ledger.dist_count() == pop_queries * static_cast<std::uint64_t>(n) * m;
  os << ",\"accounting_ok\":" << (accounting_ok ? "true" : "false");
  os << ",\"base_profile_queries\":" << base_ledger.profile_count();
  os << ",\"envelope_ok\":" << (envelope_ok ? "true" : "false");

  // Complete the log into a full game and search it exhaustively.
  bool transfer_ok = true;
  bool found = false;
  if (envelope_ok) {
    const ConsistentGame completed = build_consistent_game(pop_game, pop_log, opt.delta);
    const double half = opt.epsilon / 2.0;
    const auto pne = brute_force_pure(completed.game, half);
    found = pne.has_value();
    os << ",\"completion_certified\":" << (completed.lipschitz_certified ? "true" : "false");
    os << ",\"half_eps_pne_found\":" << (found ? "true" : "false");
    if (found) {
      const EquilibriumCheck pop_check = is_equilibrium(pop_game, *pne, opt.epsilon);
      const MixedProfile aggregate = aggregate_profile(pop, *pne);
      const RegretReport wsne = regret_well_supported(base, aggregate);
      transfer_ok = pop_check.satisfied && wsne.max_regret() <= opt.epsilon + kTol;
      os << ",\"pop_profile\":[";
      for (int v = 0; v < total_players; ++v) os << (v ? "," : "") << (*pne)[v] + 1;
      os << "],\"pop_max_regret\":" << format_double(pop_check.report.max_regret());
      os << ",\"aggregate\":[";
      for (int i = 0; i < n; ++i) {
        os << (i ? "," : "") << "[";
        for (int j = 0; j < m; ++j) {
          os << (j ? "," : "") << format_double(aggregate.dists[i][j]);
        }
        os << "]";
      }
      os << "],\"wsne_max_regret\":" << format_double(wsne.max_regret());
      os << ",\"transfer_ok\":" << (transfer_ok ? "true" : "false");
    }
  }
  os << "}";
  emit(opt.out, os.str());
  const bool passed = accounting_ok && envelope_ok && found && transfer_ok;
  return passed ? kExitHolds : kExitRefuted;
}

// ---------------------------------------------------------------------------
// existence: seeded scan for pure approximate equilibria of random Lipschitz
// games at the guaranteed-existence parameter setting.

struct ExistenceOptions {
  std::vector<int> ns{8, 10, 12};
  double epsilon = 0.3;
  int trials = 50;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_existence(const ExistenceOptions& opt) {
  if (opt.trials < 1) throw InputError("need at least one trial");
  std::ostringstream os;
  os << "n,trial,lambda,lambda_alt,found,min_epsilon,profile\n";
  std::uint64_t found_count = 0;
  std::uint64_t total = 0;
  std::ostringstream summary;
  for (int n : opt.ns) {
    if (n < 2) throw InputError("need at least two players");
    const double lambda = opt.epsilon / std::sqrt(8.0 * n * std::log(4.0 * n));
    // The alternative threshold uses log(2mn); identical at m = 2.
    const double lambda_alt = opt.epsilon / std::sqrt(8.0 * n * std::log(2.0 * 2.0 * n));
    std::uint64_t found_n = 0;
    for (int trial = 0; trial < opt.trials; ++trial) {
      const std::uint64_t stream = static_cast<std::uint64_t>(n) * 1000003u + trial;
      GeneratorConfig config{n, 2, lambda, mix_seed(opt.seed, stream)};
      const Game game = random_lipschitz_game(config);
      const auto pne = brute_force_pure(game, opt.epsilon);
      const PureScan scan = min_pure_epsilon(game);
      std::string profile_cell;
      for (int i = 0; i < n; ++i) {
        profile_cell += (i ? " " : "") + std::to_string(scan.argmin[i] + 1);
      }
      os << csv_join({std::to_string(n), std::to_string(trial), format_double(lambda),
                      format_double(lambda_alt), pne ? "1" : "0",
                      format_double(scan.min_epsilon), profile_cell})
         << "\n";
      ++total;
      if (pne) {
        ++found_n;
        ++found_count;
      }
    }
    summary << "n=" << n << ": " << found_n << "/" << opt.trials << " instances admit a "
            << format_double(opt.epsilon) << "-pure-equilibrium\n";
  }
  emit(opt.out, os.str());
  std::cerr << summary.str();
  return found_count == total ? kExitHolds : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"query-complexity laboratory for Lipschitz games"};
  app.require_subcommand(1);

  VerifyOptions verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check a profile against a game");
  verify_cmd->add_option("--game", verify.game, "game file or inline JSON")->required();
  verify_cmd->add_option("--profile", verify.profile, "profile file or inline JSON")->required();
  verify_cmd->add_option("--epsilon", verify.epsilon, "approximation level");
  verify_cmd->add_option("--concept", verify.concept_name, "pne|wsne|ane|ace (default by kind)");
  verify_cmd->add_option("--out", verify.out, "output path (default stdout)");

  AdversaryOptions adversary;
  CLI::App* adversary_cmd =
      app.add_subcommand("adversary", "defeat a deterministic algorithm on the pairs game");
  adversary_cmd->add_option("--algorithm", adversary.algorithm, "baseline name or 'scripted'")
      ->required();
  adversary_cmd->add_option("--script", adversary.script, "script file for 'scripted'");
  adversary_cmd->add_option("--k", adversary.pair_counts, "pair counts (repeatable)");
  adversary_cmd->add_option("--m", adversary.m, "actions per player");
  adversary_cmd->add_option("--alpha", adversary.alpha, "distance below (m-1)/m");
  adversary_cmd->add_option("--lambda", adversary.scale, "payoff scale in (0,1]");
  adversary_cmd->add_option("--budget", adversary.budget, "scan budget");
  adversary_cmd->add_option("--rounds", adversary.rounds, "dynamics rounds");
  adversary_cmd->add_option("--out", adversary.out, "output path (default stdout)");
  adversary_cmd->add_option("--format", adversary.format, "json|csv|auto")
      ->check(CLI::IsMember({"json", "csv", "auto"}));

  RegionOptions region;
  CLI::App* region_cmd =
      app.add_subcommand("region", "trace the reachable diagonal of the correlated polytope");
  region_cmd->add_option("--m", region.m, "actions per player");
  region_cmd->add_option("--alpha", region.alphas, "alpha values (repeatable)")->required();
  region_cmd->add_option("--grid", region.grid, "grid points for the pinned probability");
  region_cmd->add_option("--out", region.out, "output path (default stdout)");

  ReduceOptions reduce;
  CLI::App* reduce_cmd =
      app.add_subcommand("reduce", "population-game reduction and transfer demonstration");
  reduce_cmd->add_option("--game", reduce.game, "base game file or inline JSON");
  reduce_cmd->add_option("--lambda", reduce.lambdas,
                         "generator Lipschitz bound, or one value per player");
  reduce_cmd->add_option("--Lambda", reduce.total_lambda, "expected sum of per-player values");
  reduce_cmd->add_option("--sizes", reduce.sizes, "population sizes")->delimiter(',');
  reduce_cmd->add_option("--n", reduce.n, "players (generator)");
  reduce_cmd->add_option("--m", reduce.m, "actions");
  reduce_cmd->add_option("--seed", reduce.seed, "generator seed");
  reduce_cmd->add_option("--epsilon", reduce.epsilon, "target approximation");
  reduce_cmd->add_option("--delta", reduce.delta, "distribution-query accuracy");
  reduce_cmd->add_option("--gamma", reduce.gamma, "minimum support probability");
  reduce_cmd->add_option("--eta", reduce.eta, "sampling failure probability (enables sampling)");
  reduce_cmd->add_option("--adversary", reduce.adversary, "zero|truncation|rounding");
  reduce_cmd->add_option("--out", reduce.out, "output path (default stdout)");

  ExistenceOptions existence;
  CLI::App* existence_cmd =
      app.add_subcommand("existence", "scan random Lipschitz games for pure equilibria");
  existence_cmd->add_option("--n", existence.ns, "player counts (repeatable)");
  existence_cmd->add_option("--epsilon", existence.epsilon, "target approximation");
  existence_cmd->add_option("--trials", existence.trials, "instances per player count");
  existence_cmd->add_option("--seed", existence.seed, "master seed");
  existence_cmd->add_option("--out", existence.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(verify);
    if (*adversary_cmd) return cmd_adversary(adversary);
    if (*region_cmd) return cmd_region(region);
    if (*reduce_cmd) return cmd_reduce(reduce);
    if (*existence_cmd) return cmd_existence(existence);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
