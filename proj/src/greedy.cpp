#include "expost/greedy.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace expost {

ConditionReport check_conditions(const Matrix& u) {
  const std::size_t n = u.size();
  for (const auto& row : u) {
    if (row.size() != n) throw DimensionMismatch("receiver matrix must be square");
  }
  ConditionReport report;
  report.cyclically_monotone = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t pos = 0; pos + 1 < n; ++pos) {
      const std::size_t a = (k + pos) % n;
      const std::size_t b = (k + pos + 1) % n;
      if (u[a][k] < u[b][k]) {
        report.cyclically_monotone = false;
        report.witnesses.push_back({"cyclical_monotonicity", pos + 1, pos + 2, k + 1});
      }
    }
  }

  report.log_check_applicable = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(u[i][k]) <= 0) {
        report.log_check_applicable = false;
        report.witnesses.push_back({"non_positive_entry", i + 1, i + 1, k + 1});
      }
    }
  }
  if (report.log_check_applicable) {
    report.weakly_log_supermodular = true;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (j == k) continue;
          // u(i,k)/u(i,k+1) >= u(j,k)/u(j,k+1), denominators positive.
          if (u[i][k] * u[j][k + 1] < u[j][k] * u[i][k + 1]) {
            report.weakly_log_supermodular = false;
            report.witnesses.push_back({"weak_log_supermodularity", i + 1, j + 1, k + 1});
          }
        }
      }
    }
  }
  return report;
}

namespace {

bool is_zero(const Vector& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& r) { return sgn(r) == 0; });
}

LinearProgram round_program(const Matrix& u, std::size_t i, const Vector& budget) {
  const std::size_t m = u.size();
  LinearProgram lp(m);
  std::fill(lp.objective.begin(), lp.objective.end(), Rational(1));
  for (std::size_t j = 0; j < m; ++j) {
    if (j == i) continue;
    Vector row(m);
    for (std::size_t k = 0; k < m; ++k) row[k] = u[j][k] - u[i][k];
    lp.add_constraint(std::move(row), Relation::LessEqual, 0);
  }
  for (std::size_t k = 0; k < m; ++k) lp.upper_bounds[k] = budget[k];
  return lp;
}

Rational incentive_gap(const Matrix& u, std::size_t i, std::size_t j, const Vector& x) {
  Rational total = 0;
  for (std::size_t k = 0; k < x.size(); ++k) total += (u[j][k] - u[i][k]) * x[k];
  return total;
}


// Row i of LP_i's tight pattern: IC_j when bit j is set, budget_j otherwise.
void add_tight_pattern(LinearProgram& lp, const Matrix& u, std::size_t i, const Vector& budget,
                       std::size_t pattern) {
  const std::size_t m = u.size();
  for (std::size_t j = 0; j < m; ++j) {
    if (j == i && (pattern >> j & 1U)) continue;
    Vector row(m, Rational(0));
    if (pattern >> j & 1U) {
      for (std::size_t k = 0; k < m; ++k) row[k] = u[j][k] - u[i][k];
      lp.add_constraint(std::move(row), Relation::Equal, 0);
    } else {
      row[j] = 1;
      lp.add_constraint(std::move(row), Relation::Equal, budget[j]);
    }
  }
}

// Maximises the last coordinate, then the one before it, and so on.
std::optional<Vector> latest_states_first(LinearProgram lp) {
  const std::size_t m = lp.num_variables();
  Vector best;
  for (std::size_t k = m; k-- > 0;) {
    std::fill(lp.objective.begin(), lp.objective.end(), Rational(0));
    lp.objective[k] = 1;
    const LPSolution sol = solve(lp);
    if (!sol.optimal()) return std::nullopt;
    best = sol.assignment;
    Vector fix(m, Rational(0));
    fix[k] = 1;
    lp.add_constraint(std::move(fix), Relation::Equal, sol.value);
  }
  return best;
}

bool later_states_heavier(const Vector& a, const Vector& b) {
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return a[k] > b[k];
  }
  return false;
}

bool is_tight(const Matrix& u, std::size_t i, const Vector& budget, const Vector& x) {
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j != i && sgn(incentive_gap(u, i, j, x)) != 0 && x[j] != budget[j]) return false;
  }
  return true;
}

// Optima of LP_i worth trying: the one taking mass from later states first
// and, when that one leaves some j with neither IC_j nor budget_j tight, the
// same rule restricted to optima where every j is tight.
std::vector<Vector> round_candidates(const LinearProgram& lp, const Matrix& u, std::size_t i,
                                     const Vector& budget, const Rational& mass) {
  const std::size_t m = u.size();
  LinearProgram optimal_face = lp;
  optimal_face.add_constraint(Vector(m, Rational(1)), Relation::Equal, mass);
  std::optional<Vector> plain = latest_states_first(optimal_face);
  if (!plain) throw std::logic_error("greedy round program lost its optimum");
  if (is_tight(u, i, budget, *plain)) return {*plain};
  std::optional<Vector> chosen;
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << m); ++pattern) {
    if (pattern >> i & 1U) continue;
    LinearProgram restricted = optimal_face;
    add_tight_pattern(restricted, u, i, budget, pattern);
    std::optional<Vector> x = latest_states_first(restricted);
    if (x && (!chosen || later_states_heavier(*x, *chosen))) chosen = std::move(x);
  }
  if (!chosen) return {*plain};
  return {*plain, *chosen};
}

struct Plan {
  Rational value = 0;
  std::vector<Vector> rows;
};

// Best sender value over the chains of candidate rows from round i on.
// Ties keep the earlier candidate.
Plan best_plan(const Matrix& u, const Matrix& v, std::size_t i, const Vector& budget) {
  if (i == u.size() || is_zero(budget)) return {};
  const LinearProgram lp = round_program(u, i, budget);
  const LPSolution sol = solve(lp);
  if (!sol.optimal()) throw std::logic_error("greedy round program is " + to_string(sol.status));
  std::optional<Plan> best;
  for (Vector& row : round_candidates(lp, u, i, budget, sol.value)) {
    Vector rest = budget;
    for (std::size_t q = 0; q < rest.size(); ++q) rest[q] -= row[q];
    Plan plan = best_plan(u, v, i + 1, rest);
    plan.value += dot(v[i], row);
    plan.rows.insert(plan.rows.begin(), std::move(row));
    if (!best || plan.value > best->value) best = std::move(plan);
  }
  return std::move(*best);
}
}  // namespace

GreedyTrace run_greedy(const Game& game, const Belief& prior) {
  check_dimensions(game, prior);
  const std::size_t n = game.num_states();
  if (game.num_actions() != n) {
    throw DimensionMismatch("greedy scheme needs as many actions as states");
  }
  GreedyTrace trace;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(prior[k]) > 0) trace.kept_states.push_back(k);
  }
  const std::size_t m = trace.kept_states.size();
  for (std::size_t i : trace.kept_states) {
    Vector row;
    for (std::size_t k : trace.kept_states) row.push_back(game.receiver[i][k]);
    trace.local_receiver.push_back(std::move(row));
  }
  trace.outcome.pi.assign(n, Vector(n, Rational(0)));

  Vector budget(m);
  for (std::size_t q = 0; q < m; ++q) budget[q] = prior[trace.kept_states[q]];

  Matrix local_sender;
  for (std::size_t i : trace.kept_states) {
    Vector row;
    for (std::size_t k : trace.kept_states) row.push_back(game.sender[i][k]);
    local_sender.push_back(std::move(row));
  }
  const Plan plan = best_plan(trace.local_receiver, local_sender, 0, budget);

  for (std::size_t i = 0; i < plan.rows.size(); ++i) {
    GreedyRound round;
    round.local_action = i;
    round.action = trace.kept_states[i];
    round.lp = round_program(trace.local_receiver, i, budget);
    const LPSolution sol = solve(round.lp);
    if (!sol.optimal()) throw std::logic_error("greedy round program is " + to_string(sol.status));
    round.budget = budget;
    round.local_row = plan.rows[i];
    round.mass = sol.value;
    round.row.assign(n, Rational(0));
    for (std::size_t q = 0; q < m; ++q) {
      budget[q] -= round.local_row[q];
      round.row[trace.kept_states[q]] = round.local_row[q];
    }
    round.residual.assign(n, Rational(0));
    for (std::size_t q = 0; q < m; ++q) round.residual[trace.kept_states[q]] = budget[q];
    trace.outcome.pi[round.action] = round.row;
    trace.value += dot(game.sender[round.action], round.row);
    trace.rounds.push_back(std::move(round));
  }
  trace.exhausted = is_zero(budget);
  return trace;
}

GreedyTrace greedy_scheme(const Game& game, const Belief& prior) {
  GreedyTrace trace = run_greedy(game, prior);
  if (!trace.exhausted) {
    const Vector& left = trace.rounds.empty() ? prior.probabilities() : trace.rounds.back().residual;
    throw BudgetNotExhausted("budget left after the last action: " + to_string(left), std::move(trace));
  }
  return trace;
}

bool round_uses_up_budget(const GreedyRound& round) {
  return sgn(round.residual[round.action]) == 0;
}

BindReport check_bind(const GreedyTrace& trace, std::size_t index) {
  const GreedyRound& round = trace.rounds.at(index);
  const Matrix& u = trace.local_receiver;
  const std::size_t m = u.size();
  const std::size_t i = round.local_action;
  BindReport report;
  report.returned_tight = is_tight(u, i, round.budget, round.local_row);
  if (report.returned_tight) {
    report.certificate_exists = true;
    return report;
  }
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << m); ++pattern) {
    if (pattern >> i & 1U) continue;
    LinearProgram lp = round.lp;
    lp.add_constraint(Vector(m, Rational(1)), Relation::Equal, round.mass);
    add_tight_pattern(lp, u, i, round.budget, pattern);
    if (solve(lp).status != LPStatus::Infeasible) {
      report.certificate_exists = true;
      break;
    }
  }
  return report;
}

Game make_credence_game(const CredenceParams& params) {
  const std::size_t n = params.n();
  if (n == 0) throw ParamInvariantViolated("at least one treatment is required");
  if (sgn(params.loss) <= 0) throw ParamInvariantViolated("loss must be positive");
  if (params.margins.size() != n) {
    throw ParamInvariantViolated("prices and margins differ in length");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (params.prices[i] <= params.prices[i - 1]) {
      throw ParamInvariantViolated("prices must strictly increase");
    }
    if (params.margins[i] >= params.margins[i - 1]) {
      throw ParamInvariantViolated("margins must strictly decrease");
    }
  }
  Matrix u(n, Vector(n));
  Matrix v(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      u[i][j] = params.offset - params.prices[i] - (i < j ? params.loss : Rational(0));
      v[i][j] = params.margins[i];
      if (sgn(u[i][j]) <= 0) {
        throw ParamInvariantViolated("receiver utility at (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") is " + to_string(u[i][j]) +
                                     "; raise the offset");
      }
    }
  }
  const ConditionReport report = check_conditions(u);
  if (!report.both()) {
    throw ParamInvariantViolated("generated receiver utility fails the greedy conditions");
  }
  std::vector<std::string> treatments;
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < n; ++i) {
    treatments.push_back("treatment" + std::to_string(i + 1));
    problems.push_back("problem" + std::to_string(i + 1));
  }
  return Game(std::move(treatments), std::move(problems), std::move(v), std::move(u));
}

Rational perturbation_loss_mass(const CredenceParams& params, const Vector& residual, std::size_t i) {
  const std::size_t n = params.n();
  if (residual.size() != n || i >= n) throw DimensionMismatch("residual or round index out of range");
  Rational head = 0;
  for (std::size_t k = 0; k <= i; ++k) head += residual[k];
  Rational tail = 0;
  for (std::size_t k = i + 1; k < n; ++k) tail += residual[k];
  std::optional<Rational> best;
  for (std::size_t j = i; j < n; ++j) {
    if (j > i) tail -= residual[j];
    Rational x = (head + tail) / (1 - (params.prices[j] - params.prices[i]) / params.loss);
    if (!best || x < *best) best = std::move(x);
  }
  return *best;
}

GapBound greedy_gap_bound(const Game& game, const Belief& prior) {
  const ConditionReport report = check_conditions(game.receiver);
  if (!report.both()) {
    throw ConditionsNotMet("receiver utility is not cyclically monotone and weakly log-supermodular");
  }
  GapBound out;
  out.v_bp = solve_bp(game, prior).value;
  out.v_expost = solve_expost(game, prior).value;
  const GreedyTrace trace = greedy_scheme(game, prior);
  out.v_greedy = trace.value;
  out.greedy_expost_ir = is_expost_ir(trace.outcome, game, prior);
  out.bound_holds = out.v_bp - out.v_expost <= out.v_bp - out.v_greedy;
  return out;
}

}  // namespace expost
