#include "liplab/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <unordered_map>

#include "liplab/regret.hpp"

namespace liplab {

struct PopulationGame::EvalCache {
  std::mutex mu;
  // (player, action, per-population action counts with own population zeroed)
  std::map<std::vector<int>, double> values;
};

PopulationGame::PopulationGame(Game base, std::vector<int> sizes)
    : base_(std::move(base)), sizes_(std::move(sizes)), cache_(std::make_shared<EvalCache>()) {
  if (static_cast<int>(sizes_.size()) != base_.players()) {
    throw InputError("population sizes must match the base game's player count");
  }
  offsets_.reserve(sizes_.size() + 1);
  offsets_.push_back(0);
  for (int L : sizes_) {
    if (L < 1) throw InputError("population sizes must be positive");
    offsets_.push_back(offsets_.back() + L);
  }
  total_ = offsets_.back();
  // Induced evaluation sums over the base game's opponent assignments.
  require_enumerable(base_.players(), base_.actions());
}

int PopulationGame::population_of(int flat_player) const {
  if (flat_player < 0 || flat_player >= total_) throw InputError("player index out of range");
  int pop = 0;
  while (offsets_[pop + 1] <= flat_player) ++pop;
  return pop;
}

int PopulationGame::member_of(int flat_player) const {
  return flat_player - offsets_[population_of(flat_player)];
}

int PopulationGame::flat_index(int population, int member) const {
  if (population < 0 || population >= static_cast<int>(sizes_.size()) || member < 0 ||
      member >= sizes_[population]) {
    throw InputError("population/member index out of range");
  }
  return offsets_[population] + member;
}

MixedProfile PopulationGame::aggregate(const PureProfile& grand) const {
  validate_pure(grand, total_, base_.actions());
  const int n = base_.players();
  const int m = base_.actions();
  MixedProfile p;
  p.dists.assign(n, std::vector<double>(m, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int ell = 0; ell < sizes_[i]; ++ell) {
      p.dists[i][grand[offsets_[i] + ell]] += 1.0;
    }
    for (int j = 0; j < m; ++j) p.dists[i][j] /= static_cast<double>(sizes_[i]);
  }
  return p;
}

MixedProfile PopulationGame::aggregate_mixed(const MixedProfile& grand) const {
  validate_mixed(grand, total_, base_.actions());
  const int n = base_.players();
  const int m = base_.actions();
  MixedProfile p;
  p.dists.assign(n, std::vector<double>(m, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int ell = 0; ell < sizes_[i]; ++ell) {
      const auto& row = grand.dists[offsets_[i] + ell];
      for (int j = 0; j < m; ++j) p.dists[i][j] += row[j];
    }
    for (int j = 0; j < m; ++j) p.dists[i][j] /= static_cast<double>(sizes_[i]);
  }
  return p;
}

std::optional<double> PopulationGame::declared_lipschitz() const {
  if (!base_.declared_lipschitz()) return std::nullopt;
  const int min_size = *std::min_element(sizes_.begin(), sizes_.end());
  return *base_.declared_lipschitz() / static_cast<double>(min_size);
}

Game PopulationGame::as_game() const {
  const PopulationGame self = *this;  // shares the payoff rule and cache
  const int m = base_.actions();
  const int n = base_.players();
  auto fn = [self, n, m](int flat_player, const PureProfile& grand) {
    const int pop = self.population_of(flat_player);
    const int action = grand[flat_player];
    // Key: deviating player's population, own action, opponents' counts.
    std::vector<int> key;
    key.reserve(2 + n * m);
    key.push_back(pop);
    key.push_back(action);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) key.push_back(0);
    }
    for (int v = 0; v < self.total_; ++v) {
      const int p = self.population_of(v);
      if (p == pop) continue;
      ++key[2 + p * m + grand[v]];
    }
    {
      std::scoped_lock lock(self.cache_->mu);
      auto it = self.cache_->values.find(key);
      if (it != self.cache_->values.end()) return it->second;
    }
    const MixedProfile agg = self.aggregate(grand);
    const double value = expected_payoff_action(self.base_, pop, action, agg);
    {
      std::scoped_lock lock(self.cache_->mu);
      self.cache_->values.emplace(key, value);
    }
    return value;
  };
  return Game(total_, m, GameKind::structured, declared_lipschitz(), fn,
              base_.name() + "-population");
}

PopulationGame induce_population_game(const Game& base, const std::vector<int>& sizes) {
  return PopulationGame(base, sizes);
}

MixedProfile aggregate_profile(const PopulationGame& pg, const PureProfile& grand) {
  return pg.aggregate(grand);
}

std::vector<double> simulate_population_distribution_query(QueryLedger& base_ledger,
                                                           const PopulationGame& pg,
                                                           const MixedProfile& grand,
                                                           const DistQuerySpec& spec,
                                                           const PerturbationAdversary& adversary) {
  const Game& base = pg.base();
  const int n = base.players();
  const int m = base.actions();
  validate_mixed(grand, pg.total_players(), m);
  spec.validate_adversarial();
  // The members' promise: every supported action carries at least gamma.
  for (const auto& row : grand.dists) {
    for (double prob : row) {
      if (prob > 0.0 && prob < spec.gamma - kTol) {
        throw PromiseError("population member violates the gamma promise");
      }
    }
  }
  const MixedProfile agg = pg.aggregate_mixed(grand);
  const int max_size = *std::max_element(pg.sizes().begin(), pg.sizes().end());
  DistQuerySpec base_spec = spec;
  base_spec.gamma = spec.gamma / static_cast<double>(max_size);

  // One base query per (player, action): player i pure on j, the rest playing
  // their population's aggregate.
  std::vector<std::vector<double>> answer(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      MixedProfile query = agg;
      query.dists[i].assign(m, 0.0);
      query.dists[i][j] = 1.0;
      answer[static_cast<std::size_t>(i) * m + j] =
          query_distribution_adversarial(base_ledger, base, query, base_spec, adversary);
    }
  }

  std::vector<double> estimates(pg.total_players());
  for (int v = 0; v < pg.total_players(); ++v) {
    const int i = pg.population_of(v);
    const auto& row = grand.dists[v];
    CompensatedSum mix;
    for (int j = 0; j < m; ++j) {
      if (row[j] == 0.0) continue;
      mix.add(row[j] * answer[static_cast<std::size_t>(i) * m + j][i]);
    }
    estimates[v] = mix.value();
  }
  return estimates;
}

std::vector<int> multi_lipschitz_population_sizes(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw InputError("no Lipschitz values given");
  CompensatedSum total;
  for (double l : lambdas) {
    if (l < 0.0 || l > 1.0) throw InputError("per-player Lipschitz values must lie in [0, 1]");
    total.add(l);
  }
  const double Lambda = total.value();
  if (!(Lambda > 0.0)) throw InputError("the Lipschitz values must have positive sum");
  const double n = static_cast<double>(lambdas.size());
  std::vector<int> sizes(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    sizes[i] = static_cast<int>(std::ceil(std::max(n * lambdas[i] / Lambda, 1.0)));
  }
  return sizes;
}

ConsistentGame build_consistent_game(const Game& base, const QueryLog& log, double delta) {
  if (delta < 0.0 || delta >= 1.0) throw InputError("delta must lie in [0, 1)");
  const int n = base.players();
  const int m = base.actions();
  require_enumerable(n, m);
  auto reported = std::make_shared<std::unordered_map<std::uint64_t, std::vector<double>>>();
  for (const auto& entry : log) {
    validate_pure(entry.profile, n, m);
    if (static_cast<int>(entry.reported.size()) != n) {
      throw InputError("log entry has a reported vector of the wrong length");
    }
    const std::vector<double> truth = base.payoffs(entry.profile);
    for (int i = 0; i < n; ++i) {
      if (std::abs(entry.reported[i] - truth[i]) > delta + kTol) {
        throw InputError("logged report lies outside the delta envelope");
      }
      if (entry.reported[i] < -kTol || entry.reported[i] > 1.0 + kTol) {
        throw InputError("logged report lies outside [0, 1]");
      }
    }
    const std::uint64_t idx = profile_index(entry.profile, m);
    auto [it, inserted] = reported->emplace(idx, entry.reported);
    if (!inserted && it->second != entry.reported) {
      throw InputError("log reports two different answers for one profile");
    }
  }

  Game base_copy = base;
  auto fn = [base_copy, reported, m](int player, const PureProfile& a) {
    auto it = reported->find(profile_index(a, m));
    if (it != reported->end()) return it->second[player];
    return base_copy.payoff(player, a);
  };
  // Perturbing logged answers can stretch the Lipschitz constant by at most
  // 2 delta; below delta < lambda/4 that stays within 1.5 lambda.
  std::optional<double> lambda;
  if (base.declared_lipschitz()) {
    lambda = std::min(1.0, *base.declared_lipschitz() + 2.0 * delta);
  }
  ConsistentGame result{Game(n, m, GameKind::structured, lambda, fn, base.name() + "-consistent"),
                        delta, false};
  if (base.declared_lipschitz() && delta < *base.declared_lipschitz() / 4.0) {
    result.lipschitz_certified = true;
  }
  return result;
}

double MultiLipschitzGame::total() const {
  CompensatedSum s;
  for (double l : lambdas) s.add(l);
  return s.value();
}

MultiLipschitzGame make_multi_lipschitz_game(Game base, std::vector<double> lambdas) {
  if (static_cast<int>(lambdas.size()) != base.players()) {
    throw InputError("need one Lipschitz value per player");
  }
  for (double l : lambdas) {
    if (l < 0.0 || l > 1.0) throw InputError("per-player Lipschitz values must lie in [0, 1]");
  }
  std::sort(lambdas.begin(), lambdas.end());
  const std::uint64_t space =
      power_u64(static_cast<std::uint64_t>(base.actions()), base.players());
  if (space <= (std::uint64_t{1} << 14)) {
    // Sorting relabels players, so check each claimed bound against the
    // *largest* per-player influence it could stand for: a sorted vector is
    // valid iff the sorted influences are dominated entrywise.
    std::vector<double> influence(base.players());
    for (int i = 0; i < base.players(); ++i) influence[i] = measure_player_influence(base, i);
    std::sort(influence.begin(), influence.end());
    for (int i = 0; i < base.players(); ++i) {
      if (influence[i] > lambdas[i] + kTol) {
        throw InputError("claimed Lipschitz values are below the measured influence");
      }
    }
  }
  return MultiLipschitzGame{std::move(base), std::move(lambdas)};
}

std::vector<int> multi_lipschitz_population_sizes(const MultiLipschitzGame& game) {
  return multi_lipschitz_population_sizes(game.lambdas);
}

}  // namespace liplab
