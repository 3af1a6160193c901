#include "liplab/query.hpp"

#include <algorithm>
#include <cmath>

namespace liplab {

void DistQuerySpec::validate_adversarial() const {
  if (delta < 0.0 || delta >= 1.0) throw InputError("delta must lie in [0, 1)");
  if (!(gamma > 0.0) || gamma > 1.0) throw InputError("gamma must lie in (0, 1]");
}

void DistQuerySpec::validate_sampling() const {
  validate_adversarial();
  if (!(delta > 0.0)) throw InputError("sampling needs delta > 0");
  if (!(eta > 0.0) || eta >= 1.0) throw InputError("eta must lie in (0, 1)");
  if (!(log_base > 1.0)) throw InputError("the log base must exceed 1");
}

PerturbationAdversary zero_adversary() {
  return {"zero",
          [](const std::vector<double>& truth, double, const QueryLog&) { return truth; }};
}

PerturbationAdversary truncation_adversary() {
  return {"truncation", [](const std::vector<double>& truth, double delta, const QueryLog&) {
            std::vector<double> out(truth.size());
            for (std::size_t i = 0; i < truth.size(); ++i) out[i] = std::max(truth[i] - delta, 0.0);
            return out;
          }};
}

PerturbationAdversary rounding_adversary() {
  return {"rounding", [](const std::vector<double>& truth, double delta, const QueryLog&) {
            if (delta == 0.0) return truth;
            std::vector<double> out(truth.size());
            for (std::size_t i = 0; i < truth.size(); ++i) {
              const double snapped = std::round(truth[i] / delta) * delta;
              out[i] = std::clamp(snapped, 0.0, 1.0);
            }
            return out;
          }};
}

std::optional<PerturbationAdversary> adversary_by_name(const std::string& name) {
  if (name == "zero") return zero_adversary();
  if (name == "truncation") return truncation_adversary();
  if (name == "rounding") return rounding_adversary();
  return std::nullopt;
}

std::vector<std::string> adversary_names() { return {"zero", "truncation", "rounding"}; }

void QueryLedger::ensure_profile_capacity(std::uint64_t additional) const {
  if (profile_budget_ && profile_count_ + additional > *profile_budget_) {
    throw BudgetError("profile query budget of " + std::to_string(*profile_budget_) +
                      " exceeded");
  }
}

void QueryLedger::record_profile(const PureProfile& a, const std::vector<double>& reported) {
  ensure_profile_capacity(1);
  ++profile_count_;
  log_.push_back({a, reported});
}

void QueryLedger::record_distribution(const PureProfile* degenerate,
                                      const std::vector<double>& reported) {
  ++dist_count_;
  if (degenerate != nullptr) log_.push_back({*degenerate, reported});
}

std::vector<double> query_profile(QueryLedger& ledger, const Game& g, const PureProfile& a) {
  validate_pure(a, g.players(), g.actions());
  ledger.ensure_profile_capacity(1);
  std::vector<double> u = g.payoffs(a);
  ledger.record_profile(a, u);
  return u;
}

std::vector<double> query_distribution_adversarial(QueryLedger& ledger, const Game& g,
                                                   const MixedProfile& p,
                                                   const DistQuerySpec& spec,
                                                   const PerturbationAdversary& adversary) {
  spec.validate_adversarial();
  validate_mixed(p, g.players(), g.actions());
  const std::vector<double> truth = expected_payoffs(g, p);
  std::vector<double> reported = adversary.perturb(truth, spec.delta, ledger.log());
  if (reported.size() != truth.size()) {
    throw ContractError("adversary returned a vector of the wrong length");
  }
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (std::abs(reported[i] - truth[i]) > spec.delta + kTol) {
      throw ContractError("adversary '" + adversary.name + "' left the delta envelope");
    }
    if (reported[i] < -kTol || reported[i] > 1.0 + kTol) {
      throw ContractError("adversary '" + adversary.name + "' reported a value outside [0, 1]");
    }
  }
  if (p.is_degenerate()) {
    const PureProfile a = p.to_pure();
    ledger.record_distribution(&a, reported);
  } else {
    ledger.record_distribution(nullptr, reported);
  }
  return reported;
}

std::uint64_t distribution_query_sample_count(int players, const DistQuerySpec& spec) {
  spec.validate_sampling();
  const double n = static_cast<double>(players);
  const double scale = 1.0 / std::log(spec.log_base);
  const double first =
      scale * std::log(8.0 * n / spec.eta) / (spec.gamma * spec.delta * spec.delta);
  const double second = 8.0 * scale * std::log(4.0 * n / spec.eta) / spec.gamma;
  return static_cast<std::uint64_t>(std::ceil(std::max(first, second)));
}

std::vector<double> simulate_distribution_query(QueryLedger& ledger, const Game& g,
                                                const MixedProfile& p, const DistQuerySpec& spec,
                                                Rng& rng) {
  const int n = g.players();
  const int m = g.actions();
  validate_mixed(p, n, m);
  // The (delta, gamma) promise: every supported action carries at least gamma.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double prob = p.dists[i][j];
      if (prob > 0.0 && prob < spec.gamma - kTol) {
        throw PromiseError("supported action has probability below gamma");
      }
    }
  }
  const std::uint64_t samples = distribution_query_sample_count(n, spec);
  ledger.ensure_profile_capacity(samples);
  std::vector<CompensatedSum> sums(n);
  PureProfile a(std::vector<int>(n, 0));
  for (std::uint64_t t = 0; t < samples; ++t) {
    for (int i = 0; i < n; ++i) {
      const double r = uniform_unit(rng);
      double cum = 0.0;
      int chosen = m - 1;
      for (int j = 0; j < m; ++j) {
        cum += p.dists[i][j];
        if (r < cum) {
          chosen = j;
          break;
        }
      }
      a[i] = chosen;
    }
    const std::vector<double> u = query_profile(ledger, g, a);
    for (int i = 0; i < n; ++i) sums[i].add(u[i]);
  }
  std::vector<double> estimate(n);
  for (int i = 0; i < n; ++i) {
    estimate[i] = std::clamp(sums[i].value() / static_cast<double>(samples), 0.0, 1.0);
  }
  return estimate;
}

std::vector<double> QuerySession::query(const PureProfile& a) {
  if (!forward_as_distribution_) return query_profile(*ledger_, *game_, a);
  return query_distribution_adversarial(*ledger_, *game_, degenerate_mixed(a, game_->actions()),
                                        spec_, adversary_);
}

CorrelatedDistribution run_with_profile_queries(const Algorithm& algorithm, const Game& g,
                                                QueryLedger& ledger) {
  QuerySession session(g, ledger);
  return algorithm(session);
}

CorrelatedDistribution run_with_distribution_queries(const Algorithm& algorithm, const Game& g,
                                                     QueryLedger& ledger,
                                                     const DistQuerySpec& spec,
                                                     const PerturbationAdversary& adversary) {
  QuerySession session(g, ledger, spec, adversary);
  return algorithm(session);
}

}  // namespace liplab
