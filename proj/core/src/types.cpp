#include "liplab/types.hpp"

#include <cmath>
#include <numeric>

#include "liplab/game.hpp"

namespace liplab {

bool MixedProfile::is_degenerate() const {
  for (const auto& row : dists) {
    bool point = false;
    for (double p : row) {
      if (p == 1.0) point = true;
    }
    if (!point) return false;
  }
  return true;
}

PureProfile MixedProfile::to_pure() const {
  PureProfile a;
  a.actions.reserve(dists.size());
  for (const auto& row : dists) {
    int chosen = -1;
    for (int j = 0; j < static_cast<int>(row.size()); ++j) {
      if (row[j] == 1.0) {
        chosen = j;
        break;
      }
    }
    if (chosen < 0) throw InputError("profile is not degenerate");
    a.actions.push_back(chosen);
  }
  return a;
}

double CorrelatedDistribution::total_mass() const {
  CompensatedSum s;
  for (const auto& [profile, prob] : support) s.add(prob);
  return s.value();
}

DeviationMap DeviationMap::identity(int m) {
  DeviationMap d;
  d.phi.resize(m);
  for (int j = 0; j < m; ++j) d.phi[j] = j;
  return d;
}

DeviationMap DeviationMap::constant(int m, int target) {
  DeviationMap d;
  d.phi.assign(m, target);
  return d;
}

const char* concept_name(Concept c) {
  switch (c) {
    case Concept::pne:
      return "pne";
    case Concept::wsne:
      return "wsne";
    case Concept::ane:
      return "ane";
    case Concept::ace:
      return "ace";
  }
  return "?";
}

std::optional<Concept> concept_from_name(const std::string& name) {
  if (name == "pne") return Concept::pne;
  if (name == "wsne") return Concept::wsne;
  if (name == "ane") return Concept::ane;
  if (name == "ace") return Concept::ace;
  return std::nullopt;
}

double RegretReport::max_regret() const {
  double worst = 0.0;
  for (double r : regret) worst = std::max(worst, r);
  return worst;
}

void validate_pure(const PureProfile& a, int n, int m) {
  if (a.size() != n) {
    throw InputError("profile has " + std::to_string(a.size()) + " entries, expected " +
                     std::to_string(n));
  }
  for (int x : a.actions) {
    if (x < 0 || x >= m) throw InputError("action index out of range");
  }
}

void validate_mixed(const MixedProfile& p, int n, int m) {
  if (p.players() != n) throw InputError("mixed profile has wrong player count");
  for (const auto& row : p.dists) {
    if (static_cast<int>(row.size()) != m) throw InputError("mixed profile has wrong action count");
    CompensatedSum s;
    for (double v : row) {
      if (v < 0.0) throw InputError("negative probability in mixed profile");
      s.add(v);
    }
    if (std::abs(s.value() - 1.0) > kTol) throw InputError("mixed strategy does not sum to 1");
  }
}

void validate_correlated(const CorrelatedDistribution& X, int n, int m) {
  if (X.support.empty()) throw InputError("correlated distribution has empty support");
  for (const auto& [profile, prob] : X.support) {
    validate_pure(profile, n, m);
    if (!(prob > 0.0)) throw InputError("nonpositive probability in correlated support");
  }
  if (std::abs(X.total_mass() - 1.0) > kTol) {
    throw InputError("correlated distribution does not sum to 1");
  }
}

MixedProfile degenerate_mixed(const PureProfile& a, int m) {
  MixedProfile p;
  p.dists.assign(a.size(), std::vector<double>(m, 0.0));
  for (int i = 0; i < a.size(); ++i) p.dists[i][a[i]] = 1.0;
  return p;
}

CorrelatedDistribution point_mass(const PureProfile& a) {
  CorrelatedDistribution X;
  X.support[a] = 1.0;
  return X;
}

CorrelatedDistribution product_distribution(const MixedProfile& p) {
  const int n = p.players();
  const int m = p.actions();
  require_enumerable(n, m);
  CorrelatedDistribution X;
  PureProfile a(std::vector<int>(n, 0));
  do {
    double w = 1.0;
    for (int i = 0; i < n; ++i) w *= p.dists[i][a[i]];
    if (w > 0.0) X.support[a] = w;
  } while (next_profile(a, m));
  return X;
}

CorrelatedDistribution uniform_correlated(int n, int m) {
  const std::uint64_t space = require_enumerable(n, m);
  const double w = 1.0 / static_cast<double>(space);
  CorrelatedDistribution X;
  PureProfile a(std::vector<int>(n, 0));
  do {
    X.support[a] = w;
  } while (next_profile(a, m));
  return X;
}

}  // namespace liplab
