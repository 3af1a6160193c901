#include "liplab/lp.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "liplab/regret.hpp"

namespace liplab {

namespace {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
struct FieldTraits;

template <>
struct FieldTraits<double> {
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static bool positive(double v) { return v > 1e-9; }
  static bool negative(double v) { return v < -1e-9; }
  static double abs(double v) { return std::abs(v); }
};

template <>
struct FieldTraits<Rational> {
  static Rational from_double(double v) { return Rational(v); }  // exact dyadic
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static bool positive(const Rational& v) { return v > 0; }
  static bool negative(const Rational& v) { return v < 0; }
  static Rational abs(const Rational& v) { return v < 0 ? Rational(-v) : v; }
};

// Dense tableau with the phase objective carried as an extra row.  Bland's
// rule (lowest-index entering column, lowest-index basic variable on ratio
// ties) guarantees termination despite degeneracy.
template <class T>
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) { build(); }

  LpSolution solve() {
    if (!phase1()) return {LpStatus::infeasible, 0.0, {}};
    load_phase2_objective();
    if (!iterate(/*allow_artificials=*/false)) return {LpStatus::unbounded, 0.0, {}};
    LpSolution out;
    out.status = LpStatus::optimal;
    std::vector<T> x(structural_, T(0));
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) x[basis_[r]] = rhs_[r];
    }
    T value(0);
    for (int j = 0; j < structural_; ++j) value += FieldTraits<T>::from_double(lp_.objective[j]) * x[j];
    out.value = FieldTraits<T>::to_double(value);
    out.x.resize(structural_);
    for (int j = 0; j < structural_; ++j) out.x[j] = FieldTraits<T>::to_double(x[j]);
    return out;
  }

 private:
  void build() {
    structural_ = lp_.num_vars;
    rows_ = static_cast<int>(lp_.constraints.size());
    // column layout: structural | slack/surplus | artificial
    int slacks = 0;
    for (const auto& c : lp_.constraints) {
      if (c.rel != Relation::eq) ++slacks;
    }
    cols_ = structural_ + slacks + rows_;  // at most one artificial per row
    a_.assign(rows_, std::vector<T>(cols_, T(0)));
    rhs_.assign(rows_, T(0));
    basis_.assign(rows_, -1);
    artificial_start_ = structural_ + slacks;

    int slack_at = structural_;
    int artificial_at = artificial_start_;
    for (int r = 0; r < rows_; ++r) {
      const auto& c = lp_.constraints[r];
      if (static_cast<int>(c.coeffs.size()) != structural_) {
        throw InputError("constraint row has the wrong number of coefficients");
      }
      T rhs = FieldTraits<T>::from_double(c.rhs);
      T sign(1);
      Relation rel = c.rel;
      if (FieldTraits<T>::negative(rhs) || (rhs < T(0))) {
        sign = T(-1);
        rhs = -rhs;
        if (rel == Relation::le) {
          rel = Relation::ge;
        } else if (rel == Relation::ge) {
          rel = Relation::le;
        }
      }
      for (int j = 0; j < structural_; ++j) {
        a_[r][j] = sign * FieldTraits<T>::from_double(c.coeffs[j]);
      }
      rhs_[r] = rhs;
      if (rel == Relation::le) {
        a_[r][slack_at] = T(1);
        basis_[r] = slack_at;
        ++slack_at;
      } else if (rel == Relation::ge) {
        a_[r][slack_at] = T(-1);
        ++slack_at;
        a_[r][artificial_at] = T(1);
        basis_[r] = artificial_at;
        ++artificial_at;
      } else {
        a_[r][artificial_at] = T(1);
        basis_[r] = artificial_at;
        ++artificial_at;
      }
    }
    num_artificials_ = artificial_at - artificial_start_;
    obj_.assign(cols_, T(0));
    obj_rhs_ = T(0);
  }

  // Loads "minimize sum of artificials" as a maximization row and prices out
  // the basic artificials.
  bool phase1() {
    if (num_artificials_ == 0) return true;
    for (int j = artificial_start_; j < artificial_start_ + num_artificials_; ++j) obj_[j] = T(-1);
    obj_rhs_ = T(0);
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] >= artificial_start_) {
        for (int j = 0; j < cols_; ++j) obj_[j] += a_[r][j];
        obj_rhs_ += rhs_[r];
      }
    }
    if (!iterate(/*allow_artificials=*/true)) {
      throw ContractError("phase 1 of the simplex cannot be unbounded");
    }
    if (FieldTraits<T>::positive(obj_rhs_)) return false;  // leftover infeasibility
    // Drive any remaining basic artificials out of the basis.
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < artificial_start_) continue;
      int pivot_col = -1;
      for (int j = 0; j < artificial_start_; ++j) {
        if (FieldTraits<T>::positive(a_[r][j]) || FieldTraits<T>::negative(a_[r][j])) {
          pivot_col = j;
          break;
        }
      }
      if (pivot_col >= 0) {
        pivot(r, pivot_col);
      }
      // An all-zero row is redundant; its artificial stays basic at zero,
      // which is harmless once the columns are barred from re-entering.
    }
    return true;
  }

  void load_phase2_objective() {
    std::fill(obj_.begin(), obj_.end(), T(0));
    obj_rhs_ = T(0);
    for (int j = 0; j < structural_; ++j) obj_[j] = FieldTraits<T>::from_double(lp_.objective[j]);
    // Price out the basic variables.
    for (int r = 0; r < rows_; ++r) {
      const int b = basis_[r];
      if (b < 0) continue;
      const T coef = obj_[b];
      if (!(FieldTraits<T>::positive(coef) || FieldTraits<T>::negative(coef))) continue;
      for (int j = 0; j < cols_; ++j) obj_[j] -= coef * a_[r][j];
      obj_rhs_ -= coef * rhs_[r];
    }
  }

  // Maximizes the current objective row.  Returns false on unboundedness.
  bool iterate(bool allow_artificials) {
    const int limit = allow_artificials ? cols_ : artificial_start_;
    while (true) {
      int entering = -1;
      for (int j = 0; j < limit; ++j) {
        if (FieldTraits<T>::positive(obj_[j]) && !is_basic(j)) {
          entering = j;  // Bland: lowest index
          break;
        }
      }
      if (entering < 0) return true;
      int leaving = -1;
      for (int r = 0; r < rows_; ++r) {
        if (!FieldTraits<T>::positive(a_[r][entering])) continue;
        if (leaving < 0) {
          leaving = r;
          continue;
        }
        const T lhs = rhs_[r] * a_[leaving][entering];
        const T rhs = rhs_[leaving] * a_[r][entering];
        if (lhs < rhs || (lhs == rhs && basis_[r] < basis_[leaving])) leaving = r;
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  bool is_basic(int col) const {
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] == col) return true;
    }
    return false;
  }

  void pivot(int row, int col) {
    const T inv = T(1) / a_[row][col];
    for (int j = 0; j < cols_; ++j) a_[row][j] *= inv;
    rhs_[row] *= inv;
    a_[row][col] = T(1);
    for (int r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const T factor = a_[r][col];
      if (!(FieldTraits<T>::positive(factor) || FieldTraits<T>::negative(factor))) continue;
      for (int j = 0; j < cols_; ++j) a_[r][j] -= factor * a_[row][j];
      a_[r][col] = T(0);
      rhs_[r] -= factor * rhs_[row];
    }
    const T factor = obj_[col];
    if (FieldTraits<T>::positive(factor) || FieldTraits<T>::negative(factor)) {
      for (int j = 0; j < cols_; ++j) obj_[j] -= factor * a_[row][j];
      obj_[col] = T(0);
      obj_rhs_ -= factor * rhs_[row];
    }
    basis_[row] = col;
  }

  const LinearProgram& lp_;
  int structural_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  int artificial_start_ = 0;
  int num_artificials_ = 0;
  std::vector<std::vector<T>> a_;
  std::vector<T> rhs_;
  std::vector<T> obj_;
  T obj_rhs_{0};
  std::vector<int> basis_;
};

void validate_lp(const LinearProgram& lp) {
  if (lp.num_vars <= 0) throw InputError("linear program has no variables");
  if (static_cast<int>(lp.objective.size()) != lp.num_vars) {
    throw InputError("objective has the wrong number of coefficients");
  }
}

}  // namespace

LpSolution solve_lp_double(const LinearProgram& lp) {
  validate_lp(lp);
  return Simplex<double>(lp).solve();
}

LpSolution solve_lp_exact(const LinearProgram& lp) {
  validate_lp(lp);
  return Simplex<Rational>(lp).solve();
}

LpSolution solve_lp(const LinearProgram& lp) {
  validate_lp(lp);
  return lp.num_vars <= kExactVarLimit ? solve_lp_exact(lp) : solve_lp_double(lp);
}

AceLp ace_polytope_lp(const Game& g, double epsilon) {
  if (epsilon < 0.0) throw InputError("epsilon must be nonnegative");
  const int n = g.players();
  const int m = g.actions();
  const std::uint64_t space = power_u64(static_cast<std::uint64_t>(m), n);
  if (space > (std::uint64_t{1} << 12)) {
    throw SizeError("correlated-equilibrium polytope would need more than 2^12 profile variables");
  }
  AceLp ace;
  ace.num_profiles = space;
  ace.players = n;
  ace.actions = m;
  LinearProgram& lp = ace.lp;
  lp.num_vars = static_cast<int>(space) + n * m;
  lp.objective.assign(lp.num_vars, 0.0);

  // Probabilities form a distribution.
  LpConstraint simplex_row;
  simplex_row.coeffs.assign(lp.num_vars, 0.0);
  for (std::uint64_t idx = 0; idx < space; ++idx) simplex_row.coeffs[idx] = 1.0;
  simplex_row.rel = Relation::eq;
  simplex_row.rhs = 1.0;
  lp.constraints.push_back(std::move(simplex_row));

  // t_{ij} >= gain from deviating j -> j', for every target j'.
  PureProfile a(std::vector<int>(n, 0));
  PureProfile dev;
  std::vector<std::vector<std::vector<double>>> gain_coeff(
      static_cast<std::size_t>(n),
      std::vector<std::vector<double>>(static_cast<std::size_t>(m) * m,
                                       std::vector<double>(space, 0.0)));
  std::uint64_t idx = 0;
  do {
    for (int i = 0; i < n; ++i) {
      const int rec = a[i];
      const double realized = g.payoff(i, a);
      dev = a;
      for (int jp = 0; jp < m; ++jp) {
        if (jp == rec) continue;
        dev[i] = jp;
        gain_coeff[i][static_cast<std::size_t>(rec) * m + jp][idx] = g.payoff(i, dev) - realized;
      }
    }
    ++idx;
  } while (next_profile(a, m));

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int jp = 0; jp < m; ++jp) {
        if (jp == j) continue;
        LpConstraint row;
        row.coeffs.assign(lp.num_vars, 0.0);
        for (std::uint64_t s = 0; s < space; ++s) {
          row.coeffs[s] = gain_coeff[i][static_cast<std::size_t>(j) * m + jp][s];
        }
        row.coeffs[ace.t_var(i, j)] = -1.0;
        row.rel = Relation::le;
        row.rhs = 0.0;
        lp.constraints.push_back(std::move(row));
      }
    }
  }

  // Per-player swap-regret budget.
  for (int i = 0; i < n; ++i) {
    LpConstraint row;
    row.coeffs.assign(lp.num_vars, 0.0);
    for (int j = 0; j < m; ++j) row.coeffs[ace.t_var(i, j)] = 1.0;
    row.rel = Relation::le;
    row.rhs = epsilon;
    lp.constraints.push_back(std::move(row));
  }
  return ace;
}

namespace {

CorrelatedDistribution witness_from_solution(const AceLp& ace, const LpSolution& sol) {
  CorrelatedDistribution X;
  CompensatedSum mass;
  for (std::uint64_t idx = 0; idx < ace.num_profiles; ++idx) {
    const double p = sol.x[ace.x_var(idx)];
    if (p > 1e-15) {
      X.support[profile_from_index(idx, ace.players, ace.actions)] = p;
      mass.add(p);
    }
  }
  const double total = mass.value();
  if (total <= 0.0) throw ContractError("feasible correlated distribution has zero mass");
  if (std::abs(total - 1.0) > 1e-15) {
    for (auto& [profile, prob] : X.support) prob /= total;
  }
  return X;
}

}  // namespace

MaxProbResult max_profile_prob_ace(const Game& g, double epsilon, const PureProfile& target) {
  validate_pure(target, g.players(), g.actions());
  AceLp ace = ace_polytope_lp(g, epsilon);
  ace.lp.objective[ace.x_var(profile_index(target, g.actions()))] = 1.0;
  const LpSolution sol = solve_lp(ace.lp);
  if (sol.status != LpStatus::optimal) {
    throw ContractError("the eps-ACE polytope cannot be empty for eps >= 0");
  }
  MaxProbResult result;
  result.value = sol.value;
  result.witness = witness_from_solution(ace, sol);
  const RegretReport check = regret_correlated(g, result.witness);
  if (check.max_regret() > epsilon + 1e-9) {
    throw ContractError("LP witness fails independent swap-regret recomputation");
  }
  return result;
}

std::optional<MaxProbResult> max_profile_prob_ace_pinned(const Game& g, double epsilon,
                                                         const PureProfile& target,
                                                         const PureProfile& pinned,
                                                         double pinned_prob) {
  validate_pure(target, g.players(), g.actions());
  validate_pure(pinned, g.players(), g.actions());
  if (pinned_prob < 0.0 || pinned_prob > 1.0) throw InputError("pinned probability out of range");
  AceLp ace = ace_polytope_lp(g, epsilon);
  ace.lp.objective[ace.x_var(profile_index(target, g.actions()))] = 1.0;
  LpConstraint pin;
  pin.coeffs.assign(ace.lp.num_vars, 0.0);
  pin.coeffs[ace.x_var(profile_index(pinned, g.actions()))] = 1.0;
  pin.rel = Relation::eq;
  pin.rhs = pinned_prob;
  ace.lp.constraints.push_back(std::move(pin));
  const LpSolution sol = solve_lp(ace.lp);
  if (sol.status == LpStatus::infeasible) return std::nullopt;
  if (sol.status != LpStatus::optimal) {
    throw ContractError("pinned correlated-equilibrium slice cannot be unbounded");
  }
  MaxProbResult result;
  result.value = sol.value;
  result.witness = witness_from_solution(ace, sol);
  const RegretReport check = regret_correlated(g, result.witness);
  if (check.max_regret() > epsilon + 1e-9) {
    throw ContractError("LP witness fails independent swap-regret recomputation");
  }
  return result;
}

}  // namespace liplab
