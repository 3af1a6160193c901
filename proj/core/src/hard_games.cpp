#include "liplab/hard_games.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <unordered_set>

#include "liplab/regret.hpp"

namespace liplab {

Game make_matching_pennies(int pair_count, int actions) {
  if (pair_count < 1) throw InputError("need at least one pair");
  if (actions < 2) throw InputError("need at least two actions");
  const int n = 2 * pair_count;
  auto fn = [](int player, const PureProfile& a) {
    const int partner = player ^ 1;
    const bool matched = a[player] == a[partner];
    // Even index = first player of the pair, wins on a match.
    return ((player % 2 == 0) == matched) ? 1.0 : 0.0;
  };
  return Game(n, actions, GameKind::structured, 1.0, fn,
              "matching_pennies(k=" + std::to_string(pair_count) +
                  ",m=" + std::to_string(actions) + ")",
              "{\"type\":\"matching_pennies\",\"k\":" + std::to_string(pair_count) +
                  ",\"m\":" + std::to_string(actions) + "}");
}

double rho(double alpha, int actions) {
  if (actions < 2) throw InputError("need at least two actions");
  const double md = static_cast<double>(actions);
  if (!(alpha > 0.0) || !(alpha < (md - 1.0) / md)) {
    throw InputError("alpha must lie strictly between 0 and (m-1)/m");
  }
  return ((2.0 - alpha) * md - 1.0) / (2.0 * md);
}

Lemma3Check check_lemma3_bound(const CorrelatedDistribution& X, int pair_count, int actions,
                               double alpha) {
  const Game g = make_matching_pennies(pair_count, actions);
  const int n = g.players();
  validate_correlated(X, n, actions);
  const double md = static_cast<double>(actions);
  const double epsilon = (md - 1.0) / md - alpha;
  const RegretReport report = regret_correlated(g, X);
  if (report.max_regret() > epsilon + kTol) {
    throw InputError("distribution is not an eps-ACE of the pairs game (regret " +
                     format_double(report.max_regret()) + " > " + format_double(epsilon) + ")");
  }
  Lemma3Check check;
  check.cap = std::pow(rho(alpha, actions), static_cast<double>(n) / 2.0);
  for (const auto& [profile, prob] : X.support) {
    if (prob > check.max_probability) {
      check.max_probability = prob;
      check.worst_profile = profile;
    }
  }
  check.holds = check.max_probability < check.cap;
  return check;
}

Game build_perturbed_game(const QueryLog& log, int pair_count, int actions, int favored_action) {
  if (favored_action < 0 || favored_action >= actions) {
    throw InputError("favored action out of range");
  }
  const Game base = make_matching_pennies(pair_count, actions);
  const int n = base.players();
  auto logged = std::make_shared<std::unordered_set<std::uint64_t>>();
  for (const auto& entry : log) {
    validate_pure(entry.profile, n, actions);
    logged->insert(profile_index(entry.profile, actions));
  }
  auto fn = [base, logged, actions, favored_action](int player, const PureProfile& a) {
    if (logged->count(profile_index(a, actions)) > 0) return base.payoff(player, a);
    if (player == 0) return a[0] == favored_action ? 1.0 : 0.0;
    return 0.0;
  };
  return Game(n, actions, GameKind::structured, 1.0, fn,
              "perturbed_matching_pennies(k=" + std::to_string(pair_count) +
                  ",m=" + std::to_string(actions) + ")");
}

Game AdversaryOutcome::perturbed_game() const {
  return build_perturbed_game(log, pair_count, actions, favored_action);
}

const char* verdict_name(AdversaryVerdict v) {
  switch (v) {
    case AdversaryVerdict::lower_bound_confirmed:
      return "lower_bound_confirmed";
    case AdversaryVerdict::failed_on_base_game:
      return "failed_on_base_game";
    case AdversaryVerdict::hypothesis_unmet:
      return "hypothesis_unmet";
  }
  return "?";
}

namespace {

// First player's payoff expectations in a perturbed game under X, both as
// played and under the constant deviation onto the favored action.
void first_player_payoffs(const Game& perturbed, const CorrelatedDistribution& X,
                          int favored_action, double* u_base, double* u_phi) {
  CompensatedSum base_sum;
  CompensatedSum phi_sum;
  PureProfile dev;
  for (const auto& [a, prob] : X.support) {
    base_sum.add(prob * perturbed.payoff(0, a));
    dev = a;
    dev[0] = favored_action;
    phi_sum.add(prob * perturbed.payoff(0, dev));
  }
  *u_base = base_sum.value();
  *u_phi = phi_sum.value();
}

}  // namespace

AdversaryOutcome run_deterministic_adversary(const Algorithm& algorithm, int pair_count,
                                             int actions, double alpha, double scale) {
  const Game base = make_matching_pennies(pair_count, actions);
  const bool scaled = scale != 1.0;
  const Game game = scaled ? scale_game(base, scale) : base;
  const int n = base.players();
  const double md = static_cast<double>(actions);

  AdversaryOutcome out;
  out.pair_count = pair_count;
  out.actions = actions;
  out.players = n;
  out.alpha = alpha;
  out.scale = scale;
  out.rho_value = rho(alpha, actions);
  out.epsilon = scale * ((md - 1.0) / md - alpha);
  const double cap = std::pow(out.rho_value, static_cast<double>(n) / 2.0);
  out.bound_q = alpha / 2.0 * std::pow(out.rho_value, -static_cast<double>(n) / 2.0);

  QueryLedger ledger;
  QuerySession session(game, ledger);
  out.output = algorithm(session);
  validate_correlated(out.output, n, actions);
  out.q = ledger.profile_count();
  out.log = ledger.log();

  // Some action of the first player carries marginal probability <= 1/m;
  // ties break toward the smallest index.
  std::vector<double> marginal(actions, 0.0);
  for (const auto& [profile, prob] : out.output.support) marginal[profile[0]] += prob;
  out.favored_action = -1;
  for (int j = 0; j < actions; ++j) {
    if (marginal[j] <= 1.0 / md + kTol) {
      out.favored_action = j;
      break;
    }
  }
  if (out.favored_action < 0) throw ContractError("no low-marginal action; masses cannot sum to 1");
  out.deviation = DeviationMap::constant(actions, out.favored_action);

  const Game perturbed = build_perturbed_game(out.log, pair_count, actions, out.favored_action);
  double u_base = 0.0;
  double u_phi = 0.0;
  first_player_payoffs(perturbed, out.output, out.favored_action, &u_base, &u_phi);
  out.u_base = u_base;
  out.u_phi = u_phi;
  if (scaled) {
    const Game perturbed_scaled = scale_game(perturbed, scale);
    double sb = 0.0;
    double sp = 0.0;
    first_player_payoffs(perturbed_scaled, out.output, out.favored_action, &sb, &sp);
    out.regret_achieved = sp - sb;
  } else {
    out.regret_achieved = u_phi - u_base;
  }

  const RegretReport base_report = regret_correlated(game, out.output);
  out.base_ace = base_report.max_regret() <= out.epsilon + kTol;

  const double slack = static_cast<double>(out.q) * cap;
  out.appendix_bounds_ok =
      out.base_ace && u_phi >= 1.0 - slack - kTol && u_base <= 1.0 / md + slack + kTol;

  if (static_cast<double>(out.q) >= out.bound_q) {
    out.verdict = AdversaryVerdict::hypothesis_unmet;
    out.dichotomy_ok = false;
  } else if (!out.base_ace) {
    out.verdict = AdversaryVerdict::failed_on_base_game;
    out.dichotomy_ok = true;
  } else if (out.regret_achieved > out.epsilon) {
    out.verdict = AdversaryVerdict::lower_bound_confirmed;
    out.dichotomy_ok = true;
  } else {
    throw ContractError("dichotomy violated: output survives both games within budget");
  }
  return out;
}

Algorithm baseline_uniform_output() {
  return [](QuerySession& session) {
    return uniform_correlated(session.players(), session.actions());
  };
}

Algorithm baseline_point_mass() {
  return [](QuerySession& session) {
    return point_mass(PureProfile(std::vector<int>(session.players(), 0)));
  };
}

Algorithm baseline_matched_uniform() {
  return [](QuerySession& session) {
    const int n = session.players();
    const int m = session.actions();
    if (n % 2 != 0) throw InputError("matched-uniform baseline needs an even player count");
    const int pairs = n / 2;
    const std::uint64_t half_space = power_u64(static_cast<std::uint64_t>(m), pairs);
    if (half_space > enumeration_limit()) throw SizeError("too many matched profiles");
    CorrelatedDistribution X;
    const double w = 1.0 / static_cast<double>(half_space);
    PureProfile pair_choice(std::vector<int>(pairs, 0));
    do {
      PureProfile a(std::vector<int>(n, 0));
      for (int p = 0; p < pairs; ++p) {
        a[2 * p] = pair_choice[p];
        a[2 * p + 1] = pair_choice[p];
      }
      X.support[a] = w;
    } while (next_profile(pair_choice, m));
    return X;
  };
}

Algorithm baseline_scan_then_empirical(std::uint64_t budget) {
  return [budget](QuerySession& session) {
    const int n = session.players();
    const int m = session.actions();
    const std::uint64_t space = power_u64(static_cast<std::uint64_t>(m), n);
    const std::uint64_t queries = std::min(budget, space);
    PureProfile best;
    double best_welfare = -1.0;
    for (std::uint64_t idx = 0; idx < queries; ++idx) {
      const PureProfile a = profile_from_index(idx, n, m);
      const std::vector<double> u = session.query(a);
      CompensatedSum welfare;
      for (double v : u) welfare.add(v);
      if (welfare.value() > best_welfare) {
        best_welfare = welfare.value();
        best = a;
      }
    }
    if (best.size() == 0) best = PureProfile(std::vector<int>(n, 0));
    return point_mass(best);
  };
}

Algorithm baseline_best_response_dynamics(int rounds) {
  return [rounds](QuerySession& session) {
    const int n = session.players();
    const int m = session.actions();
    PureProfile a(std::vector<int>(n, 0));
    for (int round = 0; round < rounds; ++round) {
      bool moved = false;
      for (int i = 0; i < n; ++i) {
        PureProfile probe = a;
        double best_value = -1.0;
        int best_action = a[i];
        for (int j = 0; j < m; ++j) {
          probe[i] = j;
          const double v = session.query(probe)[i];
          if (v > best_value) {
            best_value = v;
            best_action = j;
          }
        }
        if (best_action != a[i]) moved = true;
        a[i] = best_action;
      }
      if (!moved) break;
    }
    return point_mass(a);
  };
}

Algorithm scripted_algorithm(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad script: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("output")) throw ParseError("script needs an output");
  std::vector<PureProfile> queries;
  if (doc.contains("queries")) {
    for (const auto& q : doc.at("queries")) {
      PureProfile a;
      for (const auto& x : q) a.actions.push_back(x.get<int>() - 1);
      queries.push_back(std::move(a));
    }
  }
  CorrelatedDistribution output;
  for (const auto& item : doc.at("output").at("support")) {
    PureProfile a;
    for (const auto& x : item.at("profile")) a.actions.push_back(x.get<int>() - 1);
    output.support[a] = item.at("prob").get<double>();
  }
  return [queries, output](QuerySession& session) {
    for (const auto& a : queries) session.query(a);
    return output;
  };
}

std::vector<std::string> baseline_names() {
  return {"uniform-output", "point-mass", "matched-uniform", "scan-then-empirical", "br-dynamics"};
}

std::optional<Algorithm> make_baseline(const std::string& name, std::uint64_t budget, int rounds) {
  if (name == "uniform-output") return baseline_uniform_output();
  if (name == "point-mass") return baseline_point_mass();
  if (name == "matched-uniform") return baseline_matched_uniform();
  if (name == "scan-then-empirical") return baseline_scan_then_empirical(budget);
  if (name == "br-dynamics") return baseline_best_response_dynamics(rounds);
  return std::nullopt;
}

}  // namespace liplab
