#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "liplab/util.hpp"

namespace liplab {

// Action indices are zero-based internally; file formats use labels 1..m.
struct PureProfile {
  std::vector<int> actions;

  PureProfile() = default;
  explicit PureProfile(std::vector<int> a) : actions(std::move(a)) {}
  int size() const { return static_cast<int>(actions.size()); }
  int& operator[](int i) { return actions[i]; }
  int operator[](int i) const { return actions[i]; }
  auto operator<=>(const PureProfile&) const = default;
};

struct MixedProfile {
  // dists[i][j] = probability that player i plays action j.
  std::vector<std::vector<double>> dists;

  int players() const { return static_cast<int>(dists.size()); }
  int actions() const { return dists.empty() ? 0 : static_cast<int>(dists[0].size()); }
  // Binary-action shorthand: probability that the player picks the first action.
  double prob_first_action(int player) const { return dists[player][0]; }
  bool is_degenerate() const;
  PureProfile to_pure() const;  // requires is_degenerate()
};

// Sparse joint distribution over pure profiles; strictly positive entries only.
struct CorrelatedDistribution {
  std::map<PureProfile, double> support;

  double total_mass() const;
};

struct DeviationMap {
  std::vector<int> phi;  // phi[j] = action substituted for recommendation j

  DeviationMap() = default;
  explicit DeviationMap(std::vector<int> p) : phi(std::move(p)) {}
  static DeviationMap identity(int m);
  static DeviationMap constant(int m, int target);
  auto operator<=>(const DeviationMap&) const = default;
};

enum class Concept { pne, wsne, ane, ace };

const char* concept_name(Concept c);
std::optional<Concept> concept_from_name(const std::string& name);

struct RegretReport {
  Concept kind = Concept::ane;
  std::vector<double> regret;                // per player
  std::vector<int> best_action;              // witness deviation for pne/wsne/ane
  std::vector<DeviationMap> best_deviation;  // witness deviation map for ace

  double max_regret() const;
};

using AnyProfile = std::variant<PureProfile, MixedProfile, CorrelatedDistribution>;

void validate_pure(const PureProfile&, int n, int m);
// Rows must sum to 1 within 1e-12 and be nonnegative.
void validate_mixed(const MixedProfile&, int n, int m);
// Probabilities must be positive and sum to 1 within 1e-12.
void validate_correlated(const CorrelatedDistribution&, int n, int m);

MixedProfile degenerate_mixed(const PureProfile&, int m);
CorrelatedDistribution point_mass(const PureProfile&);
// Product distribution induced by independent mixed strategies (guarded).
CorrelatedDistribution product_distribution(const MixedProfile&);
// Uniform distribution over all m^n pure profiles (guarded).
CorrelatedDistribution uniform_correlated(int n, int m);

}  // namespace liplab
