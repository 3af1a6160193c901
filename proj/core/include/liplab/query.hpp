#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liplab/game.hpp"
#include "liplab/regret.hpp"
#include "liplab/types.hpp"

namespace liplab {

struct QueryLogEntry {
  PureProfile profile;
  std::vector<double> reported;
};

// Ordered record of (pure profile, reported payoff vector) pairs: what an
// algorithm has seen.  Input to the adversarial constructions.
using QueryLog = std::vector<QueryLogEntry>;

struct DistQuerySpec {
  double delta = 0.0;  // sup-norm accuracy of reported payoffs, in [0,1)
  double gamma = 1.0;  // minimum probability of every supported action, in (0,1]
  double eta = 0.05;   // failure probability (sampling mode), in (0,1)
  // Base of the logarithms in the sample-count formula.  Natural by
  // convention; anything > 1 is accepted.
  double log_base = 2.718281828459045235360287471352662498L;

  void validate_adversarial() const;
  void validate_sampling() const;
};

// Deterministic rule turning true payoffs into reported ones while staying
// inside the delta envelope and inside [0,1].
struct PerturbationAdversary {
  std::string name;
  std::function<std::vector<double>(const std::vector<double>& truth, double delta,
                                    const QueryLog& log)>
      perturb;
};

PerturbationAdversary zero_adversary();        // reports the truth
PerturbationAdversary truncation_adversary();  // max(u - delta, 0)
PerturbationAdversary rounding_adversary();    // nearest multiple of delta
std::optional<PerturbationAdversary> adversary_by_name(const std::string& name);
std::vector<std::string> adversary_names();

/// Accounting record for queries charged against one algorithm run.
/// The log keeps one entry per profile query and one per distribution query
/// of a degenerate (pure) profile, carrying the *reported* values.
class QueryLedger {
 public:
  QueryLedger() = default;
  explicit QueryLedger(std::uint64_t profile_budget) : profile_budget_(profile_budget) {}

  std::uint64_t profile_count() const { return profile_count_; }
  std::uint64_t dist_count() const { return dist_count_; }
  const QueryLog& log() const { return log_; }
  std::optional<std::uint64_t> profile_budget() const { return profile_budget_; }

  void ensure_profile_capacity(std::uint64_t additional) const;
  void record_profile(const PureProfile&, const std::vector<double>& reported);
  void record_distribution(const PureProfile* degenerate, const std::vector<double>& reported);

 private:
  std::uint64_t profile_count_ = 0;
  std::uint64_t dist_count_ = 0;
  std::optional<std::uint64_t> profile_budget_;
  QueryLog log_;
};

// Exact payoff vector at a pure profile; charges one profile query.
std::vector<double> query_profile(QueryLedger&, const Game&, const PureProfile&);

// Reported payoff vector of a mixed profile, perturbed by the adversary but
// guaranteed within delta of the truth; charges one distribution query.
std::vector<double> query_distribution_adversarial(QueryLedger&, const Game&, const MixedProfile&,
                                                   const DistQuerySpec&,
                                                   const PerturbationAdversary&);

// Number of profile-query samples sufficient to answer one (delta, gamma)-
// distribution query with failure probability at most eta:
//   ceil(max{ log(8n/eta) / (gamma delta^2), 8 log(4n/eta) / gamma })
// with natural logarithms.
std::uint64_t distribution_query_sample_count(int players, const DistQuerySpec&);

// Answers a (delta, gamma)-distribution query by drawing T i.i.d. pure
// profiles from p and averaging their exact payoffs; charges T profile
// queries.  The promise (every supported action has probability >= gamma) is
// checked eagerly.
std::vector<double> simulate_distribution_query(QueryLedger&, const Game&, const MixedProfile&,
                                                const DistQuerySpec&, Rng&);

/// The only handle an algorithm under test gets on a game: sizes plus a query
/// entry point.  In distribution mode every pure-profile query is forwarded
/// as a delta-distribution query of the degenerate mixed profile, so a
/// profile-query algorithm runs unchanged against perturbed answers.
class QuerySession {
 public:
  QuerySession(const Game& game, QueryLedger& ledger)
      : game_(&game), ledger_(&ledger), forward_as_distribution_(false) {}
  QuerySession(const Game& game, QueryLedger& ledger, DistQuerySpec spec,
               PerturbationAdversary adversary)
      : game_(&game),
        ledger_(&ledger),
        forward_as_distribution_(true),
        spec_(spec),
        adversary_(std::move(adversary)) {}

  int players() const { return game_->players(); }
  int actions() const { return game_->actions(); }
  std::vector<double> query(const PureProfile&);

 private:
  const Game* game_;
  QueryLedger* ledger_;
  bool forward_as_distribution_;
  DistQuerySpec spec_;
  PerturbationAdversary adversary_;
};

using Algorithm = std::function<CorrelatedDistribution(QuerySession&)>;

CorrelatedDistribution run_with_profile_queries(const Algorithm&, const Game&, QueryLedger&);
CorrelatedDistribution run_with_distribution_queries(const Algorithm&, const Game&, QueryLedger&,
                                                     const DistQuerySpec&,
                                                     const PerturbationAdversary&);

}  // namespace liplab
