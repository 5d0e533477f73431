#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "expost/game.hpp"
#include "expost/lp.hpp"
#include "expost/persuasion.hpp"

namespace expost {

struct ConditionWitness {
  std::string condition;
  std::size_t i;
  std::size_t j;
  std::size_t k;
};

struct ConditionReport {
  bool cyclically_monotone = false;
  bool weakly_log_supermodular = false;
  /// The ratio test needs every entry positive; false otherwise, in which
  /// case weakly_log_supermodular is false and a witness names the entry.
  bool log_check_applicable = false;
  std::vector<ConditionWitness> witnesses;

  bool both() const { return cyclically_monotone && weakly_log_supermodular; }
};

/// Exact check of both receiver conditions on a square matrix. Cyclical
/// witnesses are (position i, position j, state k) along column k read
/// cyclically from its diagonal; ratio witnesses are (i, j, k) with the
/// comparison between states k and k+1. Throws DimensionMismatch.
ConditionReport check_conditions(const Matrix& receiver);

struct GreedyRound {
  /// Index in the input game.
  std::size_t action;
  /// Index among the states that carry prior mass.
  std::size_t local_action;
  LinearProgram lp;
  /// Remaining prior mass before the round, over the kept states.
  Vector budget;
  /// Optimal pi(a_i, .) over the kept states.
  Vector local_row;
  /// pi(a_i, .) over all states of the input game.
  Vector row;
  Rational mass;
  /// Remaining mass after the round, over all states.
  Vector residual;
};

struct GreedyTrace {
  std::vector<std::size_t> kept_states;
  /// Receiver utility restricted to kept actions and states.
  Matrix local_receiver;
  std::vector<GreedyRound> rounds;
  OutcomeDistribution outcome;
  Rational value;
  bool exhausted = false;
};

class BudgetNotExhausted : public Error {
 public:
  BudgetNotExhausted(const std::string& message, GreedyTrace trace)
      : Error(message), trace_(std::move(trace)) {}

  const GreedyTrace& trace() const { return trace_; }

 private:
  GreedyTrace trace_;
};

/// Runs the greedy scheme and reports whether the budget ran out.
///
/// A round's program can have many optima. Two are tried per round: the one
/// drawing as much as possible from the last state, then the next-to-last,
/// and so on; and, if that one leaves some j with neither IC_j nor budget_j
/// tight, the same rule applied to the optima where every j is tight. The
/// chain of rows with the highest sender value is returned.
GreedyTrace run_greedy(const Game& game, const Belief& prior);

/// As run_greedy, but throws BudgetNotExhausted when mass is left over
/// after the last action.
GreedyTrace greedy_scheme(const Game& game, const Belief& prior);

/// The round's action uses up the budget of its own state.
bool round_uses_up_budget(const GreedyRound& round);

struct BindReport {
  /// Every j has IC_j or budget_j tight at the returned assignment.
  bool returned_tight = false;
  /// Some optimum of the round's program has such a tight pattern.
  bool certificate_exists = false;
};

/// Tests the tight-constraint property of one round. When the returned
/// assignment fails it, searches the 2^n choices of one tight constraint per
/// j for an optimal point that satisfies them.
BindReport check_bind(const GreedyTrace& trace, std::size_t round);

struct CredenceParams {
  Vector prices;
  Vector margins;
  Rational loss;
  Rational offset;

  std::size_t n() const { return prices.size(); }
};

/// u(a_i, theta_j) = offset - p_i - loss [i < j], v(a_i, .) = s_i. Throws
/// ParamInvariantViolated unless prices increase, margins decrease, every
/// receiver entry is positive and both receiver conditions hold.
Game make_credence_game(const CredenceParams& params);

/// Closed-form mass of round i (0-based) from the remaining budget.
Rational perturbation_loss_mass(const CredenceParams& params, const Vector& residual, std::size_t i);

struct GapBound {
  Rational v_bp;
  Rational v_expost;
  Rational v_greedy;
  bool greedy_expost_ir = false;
  /// V_BP - V_expost <= V_BP - V_greedy.
  bool bound_holds = false;
};

/// Throws ConditionsNotMet unless the receiver satisfies both conditions.
GapBound greedy_gap_bound(const Game& game, const Belief& prior);

}  // namespace expost
