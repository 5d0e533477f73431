#include "expost/persuasion.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace expost {

LinearProgram build_bp_lp(const Game& game, const Belief& prior) {
  check_dimensions(game, prior);
  const std::size_t n = game.num_actions();
  const std::size_t m = game.num_states();
  LinearProgram lp(n * m);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t t = 0; t < m; ++t) lp.objective[outcome_variable(game, a, t)] = game.sender[a][t];
  }
  // Recommending a must beat deviating to a': sum (u(a',t) - u(a,t)) pi(a,t) <= 0.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t other = 0; other < n; ++other) {
      if (other == a) continue;
      Vector row(n * m, Rational(0));
      for (std::size_t t = 0; t < m; ++t) {
        row[outcome_variable(game, a, t)] = game.receiver[other][t] - game.receiver[a][t];
      }
      lp.add_constraint(std::move(row), Relation::LessEqual, 0);
    }
  }
  for (std::size_t t = 0; t < m; ++t) {
    Vector row(n * m, Rational(0));
    for (std::size_t a = 0; a < n; ++a) row[outcome_variable(game, a, t)] = 1;
    lp.add_constraint(std::move(row), Relation::Equal, prior[t]);
  }
  return lp;
}

std::set<std::size_t> compute_a_plus(const Game& game, const Belief& prior) {
  const std::size_t base = best_response(game, prior).action_index;
  std::set<std::size_t> result;
  for (std::size_t a = 0; a < game.num_actions(); ++a) {
    bool better = true;
    for (std::size_t t = 0; t < game.num_states() && better; ++t) {
      better = game.sender[a][t] >= game.sender[base][t];
    }
    if (better) result.insert(a);
  }
  return result;
}

LinearProgram build_expost_lp(const Game& game, const Belief& prior) {
  LinearProgram lp = build_bp_lp(game, prior);
  const std::size_t base = best_response(game, prior).action_index;
  for (std::size_t a = 0; a < game.num_actions(); ++a) {
    for (std::size_t t = 0; t < game.num_states(); ++t) {
      if (game.sender[a][t] < game.sender[base][t]) {
        Vector row(lp.num_variables(), Rational(0));
        row[outcome_variable(game, a, t)] = 1;
        lp.add_constraint(std::move(row), Relation::Equal, 0);
      }
    }
  }
  return lp;
}

OutcomeDistribution outcome_from_assignment(const Game& game, const Vector& assignment) {
  OutcomeDistribution out{Matrix(game.num_actions(), Vector(game.num_states()))};
  for (std::size_t a = 0; a < game.num_actions(); ++a) {
    for (std::size_t t = 0; t < game.num_states(); ++t) {
      out.pi[a][t] = assignment.at(outcome_variable(game, a, t));
    }
  }
  return out;
}

OutcomeDistribution no_communication_outcome(const Game& game, const Belief& prior) {
  const std::size_t base = best_response(game, prior).action_index;
  OutcomeDistribution out{Matrix(game.num_actions(), Vector(game.num_states(), Rational(0)))};
  out.pi[base] = prior.probabilities();
  return out;
}

namespace {

SolveResult finish(const Game& game, const Belief& prior, const LinearProgram& lp,
                   const char* which) {
  const LPSolution sol = solve(lp);
  if (!sol.optimal()) {
    throw std::logic_error(std::string(which) + " program reported " + to_string(sol.status) +
                           " although no communication is always feasible");
  }
  SolveResult result;
  result.outcome = outcome_from_assignment(game, sol.assignment);
  result.value = outcome_sender_value(result.outcome, game);
  result.scheme = outcome_to_scheme(result.outcome, prior);
  result.ex_post_ir = is_expost_ir(result.outcome, game, prior);
  return result;
}

}  // namespace

SolveResult solve_bp(const Game& game, const Belief& prior) {
  return finish(game, prior, build_bp_lp(game, prior), "persuasion");
}

SolveResult solve_expost(const Game& game, const Belief& prior) {
  return finish(game, prior, build_expost_lp(game, prior), "ex-post IR");
}

SignalingScheme outcome_to_scheme(const OutcomeDistribution& outcome, const Belief& prior) {
  SignalingScheme scheme;
  for (std::size_t a = 0; a < outcome.pi.size(); ++a) {
    if (outcome.pi[a].size() != prior.size()) {
      throw InvalidBelief("outcome row width differs from the prior");
    }
    const Rational weight = sum(outcome.pi[a]);
    if (sgn(weight) == 0) continue;
    Vector posterior(outcome.pi[a].size());
    for (std::size_t t = 0; t < posterior.size(); ++t) posterior[t] = outcome.pi[a][t] / weight;
    scheme.signals.push_back({Belief(std::move(posterior)), weight, a});
  }
  return scheme;
}

OutcomeDistribution scheme_to_outcome(const SignalingScheme& scheme, std::size_t num_actions) {
  if (scheme.signals.empty()) return {};
  const std::size_t m = scheme.signals.front().posterior.size();
  OutcomeDistribution out{Matrix(num_actions, Vector(m, Rational(0)))};
  for (const auto& s : scheme.signals) {
    for (std::size_t t = 0; t < m; ++t) out.pi.at(s.induced_action)[t] += s.weight * s.posterior[t];
  }
  return out;
}

bool is_expost_ir(const OutcomeDistribution& outcome, const Game& game, const Belief& prior) {
  const std::size_t base = best_response(game, prior).action_index;
  for (std::size_t a = 0; a < game.num_actions(); ++a) {
    for (std::size_t t = 0; t < game.num_states(); ++t) {
      if (sgn(outcome.pi[a][t]) > 0 && game.sender[a][t] < game.sender[base][t]) return false;
    }
  }
  return true;
}

bool is_valid_outcome(const OutcomeDistribution& outcome, const Game& game, const Belief& prior) {
  const std::size_t n = game.num_actions();
  const std::size_t m = game.num_states();
  if (outcome.pi.size() != n) return false;
  for (const auto& row : outcome.pi) {
    if (row.size() != m) return false;
    for (const auto& x : row) {
      if (sgn(x) < 0) return false;
    }
  }
  for (std::size_t t = 0; t < m; ++t) {
    Rational col = 0;
    for (std::size_t a = 0; a < n; ++a) col += outcome.pi[a][t];
    if (col != prior[t]) return false;
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t other = 0; other < n; ++other) {
      Rational gain = 0;
      for (std::size_t t = 0; t < m; ++t) {
        gain += (game.receiver[other][t] - game.receiver[a][t]) * outcome.pi[a][t];
      }
      if (sgn(gain) > 0) return false;
    }
  }
  return true;
}

Rational outcome_sender_value(const OutcomeDistribution& outcome, const Game& game) {
  Rational total = 0;
  for (std::size_t a = 0; a < game.num_actions(); ++a) total += dot(game.sender[a], outcome.pi[a]);
  return total;
}

Rational outcome_receiver_value(const OutcomeDistribution& outcome, const Game& game) {
  Rational total = 0;
  for (std::size_t a = 0; a < game.num_actions(); ++a) total += dot(game.receiver[a], outcome.pi[a]);
  return total;
}

bool exists_expost_ir_optimum(const Game& game, const Belief& prior) {
  return solve_bp(game, prior).value == solve_expost(game, prior).value;
}

namespace {

// Unique solution of rows * x = rhs, or nullopt when the system is
// inconsistent or leaves some unknown free.
std::optional<Vector> solve_square(Matrix rows, Vector rhs, std::size_t unknowns) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) return std::nullopt;
    std::swap(rows[pivot], rows[rank]);
    std::swap(rhs[pivot], rhs[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][col]) == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < unknowns; ++c) rows[r][c] -= f * rows[rank][c];
      rhs[r] -= f * rhs[rank];
    }
    ++rank;
  }
  if (rank < unknowns) return std::nullopt;
  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (sgn(rhs[r]) != 0) return std::nullopt;
  }
  Vector x(unknowns);
  for (std::size_t i = 0; i < unknowns; ++i) x[i] = rhs[i] / rows[i][i];
  return x;
}

bool lexicographic_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Rational& x, const Rational& y) { return x < y; });
}

}  // namespace

Rational oracle_value(const Game& game, const Belief& prior, Mode mode) {
  check_dimensions(game, prior);
  const std::size_t n = game.num_actions();
  const std::size_t m = game.num_states();
  if (n > 8 || m > 4) {
    throw OracleTooLarge("oracle is limited to 8 actions and 4 states, got " + std::to_string(n) +
                         "x" + std::to_string(m));
  }

  std::vector<Vector> candidates;
  for (std::size_t actions = 1; actions < (std::size_t{1} << n); ++actions) {
    std::vector<std::size_t> tied;
    for (std::size_t a = 0; a < n; ++a) {
      if (actions >> a & 1U) tied.push_back(a);
    }
    for (std::size_t zeros = 0; zeros + 1 < (std::size_t{1} << m); ++zeros) {
      Matrix rows;
      Vector rhs;
      for (std::size_t i = 1; i < tied.size(); ++i) {
        Vector row(m);
        for (std::size_t t = 0; t < m; ++t) {
          row[t] = game.receiver[tied[i]][t] - game.receiver[tied[0]][t];
        }
        rows.push_back(std::move(row));
        rhs.emplace_back(0);
      }
      for (std::size_t t = 0; t < m; ++t) {
        if (!(zeros >> t & 1U)) continue;
        Vector row(m, Rational(0));
        row[t] = 1;
        rows.push_back(std::move(row));
        rhs.emplace_back(0);
      }
      rows.emplace_back(m, Rational(1));
      rhs.emplace_back(1);
      if (rows.size() < m) continue;

      auto mu = solve_square(std::move(rows), std::move(rhs), m);
      if (!mu) continue;
      if (std::any_of(mu->begin(), mu->end(), [](const Rational& x) { return sgn(x) < 0; })) {
        continue;
      }
      const Rational level = dot(game.receiver[tied[0]], *mu);
      bool preferred = true;
      for (std::size_t b = 0; b < n && preferred; ++b) {
        preferred = dot(game.receiver[b], *mu) <= level;
      }
      if (preferred) candidates.push_back(std::move(*mu));
    }
  }
  std::sort(candidates.begin(), candidates.end(), lexicographic_less);
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const std::size_t base = best_response(game, prior).action_index;
  // Recommending a at mu is ex-post IR when a is no worse than the
  // no-communication action in every state mu can reveal.
  auto admissible = [&](std::size_t a, const Vector& mu) {
    for (std::size_t t = 0; t < m; ++t) {
      if (sgn(mu[t]) > 0 && game.sender[a][t] < game.sender[base][t]) return false;
    }
    return true;
  };

  // One column per admissible (posterior, recommended action) pair.
  std::vector<Vector> points;
  Vector values;
  for (const auto& mu : candidates) {
    const Belief belief(mu);
    const BestResponseResult br = best_response(game, belief);
    if (mode == Mode::BP) {
      points.push_back(mu);
      values.push_back(sender_utility(game, br.action_index, belief));
      continue;
    }
    for (std::size_t a : br.tied_actions) {
      if (!admissible(a, mu)) continue;
      points.push_back(mu);
      values.push_back(sender_utility(game, a, belief));
    }
  }

  LinearProgram lp(points.size());
  lp.objective = values;
  for (std::size_t t = 0; t < m; ++t) {
    Vector row(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) row[p] = points[p][t];
    lp.add_constraint(std::move(row), Relation::Equal, prior[t]);
  }
  const LPSolution sol = solve(lp);
  if (!sol.optimal()) throw std::logic_error("oracle weight program is " + to_string(sol.status));
  return sol.value;
}

}  // namespace expost
