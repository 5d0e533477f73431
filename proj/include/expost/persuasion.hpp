#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "expost/game.hpp"
#include "expost/lp.hpp"

namespace expost {

/// Joint measure pi[a][theta] over (action, state) outcomes.
struct OutcomeDistribution {
  Matrix pi;

  bool operator==(const OutcomeDistribution& other) const = default;
};

struct Signal {
  Belief posterior;
  Rational weight;
  std::size_t induced_action;
};

/// Bayes-plausible distribution over posteriors, one signal per recommended
/// action with positive mass.
struct SignalingScheme {
  std::vector<Signal> signals;
};

struct SolveResult {
  Rational value;
  OutcomeDistribution outcome;
  SignalingScheme scheme;
  bool ex_post_ir = false;
};

enum class Mode { BP, ExPost };

/// Variable index of pi(action, state) in the persuasion programs.
inline std::size_t outcome_variable(const Game& game, std::size_t action, std::size_t state) {
  return action * game.num_states() + state;
}

/// Obedience rows for every ordered pair a != a', one feasibility equality
/// per state, objective sum v(a,theta) pi(a,theta).
LinearProgram build_bp_lp(const Game& game, const Belief& prior);

/// Actions weakly better for the sender than the no-communication best
/// response in every state. Always contains that best response.
std::set<std::size_t> compute_a_plus(const Game& game, const Belief& prior);

/// The persuasion program plus pi(a,theta) = 0 wherever
/// v(a,theta) < v(a*(prior),theta).
LinearProgram build_expost_lp(const Game& game, const Belief& prior);

SolveResult solve_bp(const Game& game, const Belief& prior);
SolveResult solve_expost(const Game& game, const Belief& prior);

/// Reads the optimal outcome back from an LP assignment.
OutcomeDistribution outcome_from_assignment(const Game& game, const Vector& assignment);

/// pi(a,theta) = prior(theta) when a is the no-communication best response.
OutcomeDistribution no_communication_outcome(const Game& game, const Belief& prior);

SignalingScheme outcome_to_scheme(const OutcomeDistribution& outcome, const Belief& prior);

/// Rebuilds pi from direct-recommendation signals.
OutcomeDistribution scheme_to_outcome(const SignalingScheme& scheme, std::size_t num_actions);

bool is_expost_ir(const OutcomeDistribution& outcome, const Game& game, const Belief& prior);

/// Feasibility in the persuasion program: non-negative, marginals equal the
/// prior, every recommendation obeyed.
bool is_valid_outcome(const OutcomeDistribution& outcome, const Game& game, const Belief& prior);

Rational outcome_sender_value(const OutcomeDistribution& outcome, const Game& game);
Rational outcome_receiver_value(const OutcomeDistribution& outcome, const Game& game);

/// V_BP(prior) == V_expost(prior): some optimal scheme is ex-post IR.
bool exists_expost_ir_optimum(const Game& game, const Belief& prior);

/// Independent check of the optimal values that never builds the obedience
/// program. Candidate posteriors are the vertices of every best-response
/// region, found by enumerating indifference sets and zero-state sets and
/// solving the resulting square systems by elimination; a small LP then
/// chooses weights on (posterior, action) pairs that average to the prior.
/// In ExPost mode an action may be paired with a posterior only when it is
/// no worse for the sender than the no-communication action in every state
/// the posterior supports. Throws OracleTooLarge above 8 actions or 4 states.
Rational oracle_value(const Game& game, const Belief& prior, Mode mode);

}  // namespace expost
