#include "expost/game.hpp"

#include <algorithm>
#include <numeric>

#include "expost/lp.hpp"

namespace expost {

namespace {

void check_matrix(const Matrix& m, std::size_t rows, std::size_t cols, const char* name) {
  if (m.size() != rows) {
    throw InvalidGame(std::string(name) + " has " + std::to_string(m.size()) +
                      " rows, expected " + std::to_string(rows));
  }
  for (std::size_t a = 0; a < rows; ++a) {
    if (m[a].size() != cols) {
      throw InvalidGame(std::string(name) + " row " + std::to_string(a) + " has " +
                        std::to_string(m[a].size()) + " entries, expected " +
                        std::to_string(cols));
    }
  }
}

bool dominates(const Vector& a, const Vector& b) {
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (a[t] < b[t]) return false;
  }
  return true;
}

Game permute_actions(const Game& game, const std::vector<std::size_t>& order) {
  std::vector<std::string> labels;
  Matrix v;
  Matrix u;
  for (std::size_t i : order) {
    labels.push_back(game.actions[i]);
    v.push_back(game.sender[i]);
    u.push_back(game.receiver[i]);
  }
  return Game(std::move(labels), game.states, std::move(v), std::move(u));
}

}  // namespace

Game::Game(std::vector<std::string> action_labels, std::vector<std::string> state_labels,
           Matrix sender_utility, Matrix receiver_utility)
    : actions(std::move(action_labels)),
      states(std::move(state_labels)),
      sender(std::move(sender_utility)),
      receiver(std::move(receiver_utility)) {
  if (actions.empty()) throw InvalidGame("game needs at least one action");
  if (states.empty()) throw InvalidGame("game needs at least one state");
  check_matrix(sender, actions.size(), states.size(), "sender_utility");
  check_matrix(receiver, actions.size(), states.size(), "receiver_utility");
}

Game Game::from_matrices(Matrix sender_utility, Matrix receiver_utility) {
  const std::size_t n = sender_utility.size();
  const std::size_t m = n == 0 ? 0 : sender_utility.front().size();
  std::vector<std::string> a(n);
  std::vector<std::string> s(m);
  for (std::size_t i = 0; i < n; ++i) a[i] = "a" + std::to_string(i + 1);
  for (std::size_t k = 0; k < m; ++k) s[k] = "t" + std::to_string(k + 1);
  return Game(std::move(a), std::move(s), std::move(sender_utility),
              std::move(receiver_utility));
}

Belief::Belief(Vector probabilities) : p_(std::move(probabilities)) {
  if (p_.empty()) throw InvalidBelief("belief is empty");
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (sgn(p_[i]) < 0) {
      throw InvalidBelief("belief entry " + std::to_string(i) + " is negative");
    }
  }
  if (sum(p_) != 1) {
    throw InvalidBelief("belief sums to " + to_string(sum(p_)) + ", not 1");
  }
}

Belief Belief::point_mass(std::size_t num_states, std::size_t state) {
  Vector p(num_states, Rational(0));
  p.at(state) = 1;
  return Belief(std::move(p));
}

Belief Belief::uniform(std::size_t num_states) {
  if (num_states == 0) throw InvalidBelief("belief is empty");
  return Belief(Vector(num_states, make_rational(1, static_cast<long>(num_states))));
}

Belief Belief::binary(const Rational& first) { return Belief({first, 1 - first}); }

void check_dimensions(const Game& game, const Belief& belief) {
  if (belief.size() != game.num_states()) {
    throw InvalidBelief("belief has " + std::to_string(belief.size()) +
                        " entries but the game has " + std::to_string(game.num_states()) +
                        " states");
  }
}

bool satisfies_sender_order(const Game& game) {
  for (std::size_t i = 0; i + 1 < game.num_actions(); ++i) {
    for (std::size_t j = i + 1; j < game.num_actions(); ++j) {
      if (!dominates(game.sender[i], game.sender[j])) return false;
    }
  }
  return true;
}

bool is_best_response_somewhere(const Game& game, std::size_t action) {
  const std::size_t m = game.num_states();
  LinearProgram lp(m);
  lp.add_constraint(Vector(m, Rational(1)), Relation::Equal, 1);
  for (std::size_t other = 0; other < game.num_actions(); ++other) {
    if (other == action) continue;
    Vector row(m);
    for (std::size_t t = 0; t < m; ++t) {
      row[t] = game.receiver[action][t] - game.receiver[other][t];
    }
    lp.add_constraint(std::move(row), Relation::GreaterEqual, 0);
  }
  return solve(lp).status != LPStatus::Infeasible;
}

ValidationReport validate_game(const Game& game) {
  const std::size_t n = game.num_actions();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Rational> totals(n);
  for (std::size_t a = 0; a < n; ++a) totals[a] = sum(game.sender[a]);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return totals[x] > totals[y]; });
  // Componentwise dominance implies a larger row sum, so if any valid order
  // exists the sum order is one; dominance is transitive, so adjacent checks
  // suffice.
  bool ok = true;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!dominates(game.sender[order[i]], game.sender[order[i + 1]])) {
      ok = false;
      break;
    }
  }

  ValidationReport report{ok, ok ? permute_actions(game, order) : game, {}, {}};
  if (ok) {
    report.order = order;
  } else {
    report.order.resize(n);
    std::iota(report.order.begin(), report.order.end(), 0);
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!is_best_response_somewhere(report.game, a)) report.never_best.push_back(a);
  }
  return report;
}

PrunedGame prune_never_best(const Game& game) {
  std::vector<std::size_t> keep;
  for (std::size_t a = 0; a < game.num_actions(); ++a) {
    if (is_best_response_somewhere(game, a)) keep.push_back(a);
  }
  return {permute_actions(game, keep), keep};
}

Game square_subgame(const Game& game, const std::vector<std::size_t>& keep) {
  std::vector<std::string> actions;
  std::vector<std::string> states;
  Matrix v;
  Matrix u;
  for (std::size_t i : keep) {
    actions.push_back(game.actions.at(i));
    states.push_back(game.states.at(i));
    Vector vr;
    Vector ur;
    for (std::size_t k : keep) {
      vr.push_back(game.sender[i][k]);
      ur.push_back(game.receiver[i][k]);
    }
    v.push_back(std::move(vr));
    u.push_back(std::move(ur));
  }
  return Game(std::move(actions), std::move(states), std::move(v), std::move(u));
}

Rational receiver_utility(const Game& game, std::size_t action, const Belief& belief) {
  return dot(game.receiver[action], belief.probabilities());
}

Rational sender_utility(const Game& game, std::size_t action, const Belief& belief) {
  return dot(game.sender[action], belief.probabilities());
}

BestResponseResult best_response(const Game& game, const Belief& belief) {
  check_dimensions(game, belief);
  BestResponseResult result;
  for (std::size_t a = 0; a < game.num_actions(); ++a) {
    Rational value = receiver_utility(game, a, belief);
    if (result.tied_actions.empty() || value > result.receiver_value) {
      result.receiver_value = std::move(value);
      result.tied_actions.assign(1, a);
    } else if (value == result.receiver_value) {
      result.tied_actions.push_back(a);
    }
  }
  result.action_index = result.tied_actions.front();
  Rational best = sender_utility(game, result.action_index, belief);
  for (std::size_t a : result.tied_actions) {
    Rational value = sender_utility(game, a, belief);
    if (value > best) {
      best = std::move(value);
      result.action_index = a;
    }
  }
  return result;
}

Rational expected_sender_utility(const Game& game, const Belief& belief) {
  return sender_utility(game, best_response(game, belief).action_index, belief);
}

Rational no_communication_value(const Game& game, const Belief& prior) {
  return expected_sender_utility(game, prior);
}

}  // namespace expost
