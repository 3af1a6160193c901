#include "liplab/game.hpp"

#include <cmath>
#include <utility>

namespace liplab {

Game::Game(int players, int actions, GameKind kind, std::optional<double> declared_lambda,
           PayoffFn payoff, std::string name, std::string descriptor)
    : players_(players),
      actions_(actions),
      kind_(kind),
      declared_lambda_(declared_lambda),
      payoff_(std::move(payoff)),
      name_(std::move(name)),
      descriptor_(std::move(descriptor)) {
  if (players_ < 1) throw InputError("a game needs at least one player");
  if (actions_ < 2) throw InputError("a game needs at least two actions");
  if (declared_lambda_ && (*declared_lambda_ <= 0.0 || *declared_lambda_ > 1.0)) {
    throw InputError("declared Lipschitz parameter must lie in (0, 1]");
  }
  if (!payoff_) throw InputError("a game needs a payoff rule");
}

double Game::payoff(int player, const PureProfile& a) const {
  if (player < 0 || player >= players_) throw InputError("player index out of range");
  validate_pure(a, players_, actions_);
  const double v = payoff_(player, a);
  if (v < -kTol || v > 1.0 + kTol) {
    throw ContractError("payoff rule returned " + format_double(v) + ", outside [0, 1]");
  }
  return v;
}

std::vector<double> Game::payoffs(const PureProfile& a) const {
  std::vector<double> u(players_);
  for (int i = 0; i < players_; ++i) u[i] = payoff(i, a);
  return u;
}

std::vector<double> eval_payoffs(const Game& g, const PureProfile& a) { return g.payoffs(a); }

std::uint64_t profile_index(const PureProfile& a, int m) {
  std::uint64_t idx = 0;
  for (int x : a.actions) idx = idx * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(x);
  return idx;
}

PureProfile profile_from_index(std::uint64_t idx, int n, int m) {
  PureProfile a(std::vector<int>(n, 0));
  for (int i = n - 1; i >= 0; --i) {
    a[i] = static_cast<int>(idx % static_cast<std::uint64_t>(m));
    idx /= static_cast<std::uint64_t>(m);
  }
  return a;
}

bool next_profile(PureProfile& a, int m) {
  for (int i = a.size() - 1; i >= 0; --i) {
    if (++a[i] < m) return true;
    a[i] = 0;
  }
  return false;
}

Game make_explicit_game(int n, int m, std::vector<double> payoffs,
                        std::optional<double> declared_lambda, std::string name) {
  const std::uint64_t space = require_enumerable(n, m);
  if (payoffs.size() != space * static_cast<std::uint64_t>(n)) {
    throw InputError("payoff tensor has wrong size");
  }
  for (double v : payoffs) {
    if (v < 0.0 || v > 1.0) throw InputError("explicit payoff outside [0, 1]");
  }
  auto tensor = std::make_shared<std::vector<double>>(std::move(payoffs));
  auto fn = [tensor, space, m](int player, const PureProfile& a) {
    return (*tensor)[static_cast<std::uint64_t>(player) * space + profile_index(a, m)];
  };
  return Game(n, m, GameKind::explicit_tensor, declared_lambda, fn, std::move(name));
}

Game make_constant_game(int n, int m, double value) {
  if (value < 0.0 || value > 1.0) throw InputError("constant payoff outside [0, 1]");
  return Game(n, m, GameKind::structured, std::nullopt,
              [value](int, const PureProfile&) { return value; }, "constant",
              "{\"type\":\"constant\",\"n\":" + std::to_string(n) +
                  ",\"m\":" + std::to_string(m) + ",\"value\":" + format_double(value) + "}");
}

Game to_explicit(const Game& g) {
  const int n = g.players();
  const int m = g.actions();
  const std::uint64_t space = require_enumerable(n, m);
  std::vector<double> tensor(space * static_cast<std::uint64_t>(n));
  PureProfile a(std::vector<int>(n, 0));
  std::uint64_t idx = 0;
  do {
    for (int i = 0; i < n; ++i) {
      tensor[static_cast<std::uint64_t>(i) * space + idx] = g.payoff(i, a);
    }
    ++idx;
  } while (next_profile(a, m));
  return make_explicit_game(n, m, std::move(tensor), g.declared_lipschitz(), g.name());
}

Game scale_game(const Game& g, double c) {
  if (!(c > 0.0) || c > 1.0) throw InputError("scale factor must lie in (0, 1]");
  std::optional<double> lambda;
  if (g.declared_lipschitz()) lambda = *g.declared_lipschitz() * c;
  Game base = g;
  std::string descriptor;
  if (!g.descriptor().empty()) {
    descriptor = "{\"type\":\"scaled\",\"c\":" + format_double(c) + ",\"base\":" + g.descriptor() + "}";
  }
  return Game(g.players(), g.actions(), GameKind::structured, lambda,
              [base, c](int player, const PureProfile& a) { return c * base.payoff(player, a); },
              g.name() + "*" + format_double(c), std::move(descriptor));
}

}  // namespace liplab
