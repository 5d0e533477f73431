#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "expost/errors.hpp"
#include "expost/rational.hpp"

namespace expost {

/// A finite persuasion instance: sender utility v[a][theta] and receiver
/// utility u[a][theta] over labelled actions and states.
struct Game {
  std::vector<std::string> actions;
  std::vector<std::string> states;
  Matrix sender;
  Matrix receiver;

  Game(std::vector<std::string> action_labels, std::vector<std::string> state_labels,
       Matrix sender_utility, Matrix receiver_utility);

  /// Labels default to a1..an and t1..tm.
  static Game from_matrices(Matrix sender_utility, Matrix receiver_utility);

  std::size_t num_actions() const { return actions.size(); }
  std::size_t num_states() const { return states.size(); }

  bool operator==(const Game& other) const = default;
};

/// Probability vector over states: non-negative entries summing to exactly 1.
class Belief {
 public:
  explicit Belief(Vector probabilities);

  static Belief point_mass(std::size_t num_states, std::size_t state);
  static Belief uniform(std::size_t num_states);
  /// Two-state belief with mu(theta_1) = first.
  static Belief binary(const Rational& first);

  const Vector& probabilities() const { return p_; }
  const Rational& operator[](std::size_t i) const { return p_[i]; }
  std::size_t size() const { return p_.size(); }

  bool operator==(const Belief& other) const = default;

 private:
  Vector p_;
};

struct BestResponseResult {
  std::size_t action_index = 0;
  Rational receiver_value;
  std::vector<std::size_t> tied_actions;
};

struct ValidationReport {
  /// Whether some order of the actions makes sender utility weakly
  /// decreasing in the action index in every state.
  bool ordering_exists = false;
  /// The input with actions reordered when an ordering exists, otherwise
  /// the input unchanged. Utilities are never modified.
  Game game;
  /// order[i] is the input index of the action at position i of `game`.
  std::vector<std::size_t> order;
  /// Indices in `game` of actions that are not a best response at any belief.
  std::vector<std::size_t> never_best;
};

ValidationReport validate_game(const Game& game);

/// True when v(a_i, .) >= v(a_j, .) componentwise for all i < j.
bool satisfies_sender_order(const Game& game);

/// Decides by LP feasibility whether some belief makes `action` weakly
/// optimal for the receiver.
bool is_best_response_somewhere(const Game& game, std::size_t action);

struct PrunedGame {
  Game game;
  std::vector<std::size_t> original_index;
};

PrunedGame prune_never_best(const Game& game);

/// Square game keeping action i and state i for every i in `keep`.
Game square_subgame(const Game& game, const std::vector<std::size_t>& keep);

Rational receiver_utility(const Game& game, std::size_t action, const Belief& belief);
Rational sender_utility(const Game& game, std::size_t action, const Belief& belief);

/// Receiver argmax with ties broken for the sender under `belief`, then by
/// lowest index.
BestResponseResult best_response(const Game& game, const Belief& belief);

/// The sender's expected utility at a posterior under the tie-break above.
Rational expected_sender_utility(const Game& game, const Belief& belief);

Rational no_communication_value(const Game& game, const Belief& prior);

/// Throws InvalidBelief unless `belief` has one entry per state.
void check_dimensions(const Game& game, const Belief& belief);

}  // namespace expost
