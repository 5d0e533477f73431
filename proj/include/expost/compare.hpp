#pragma once

#include <string>
#include <vector>

#include "expost/game.hpp"

namespace expost {

bool is_additively_separable(const Matrix& m);

/// m(i+1,k+1) + m(i,k) >= m(i+1,k) + m(i,k+1) on every adjacent pair.
bool is_supermodular(const Matrix& m);
bool is_submodular(const Matrix& m);

enum class GateStatus { Exact, Unknown };

struct GatedValue {
  GateStatus status = GateStatus::Unknown;
  Rational value;
  /// Name of the sufficient condition that fired, or why none did.
  std::string gate;
  /// Set when the gate relies on a result established outside this library.
  bool external = false;

  bool exact() const { return status == GateStatus::Exact; }
};

/// Additively separable sender: V_BP. Supermodular sender with submodular
/// receiver: the no-communication value. Otherwise Unknown.
GatedValue credible_value(const Game& game, const Belief& prior);

/// Binary states only. Continuous v-hat: V_BP. State-independent sender:
/// the quasiconcave closure at the prior. Otherwise Unknown.
GatedValue cheap_talk_value(const Game& game, const Belief& prior);

enum class CheckStatus { Holds, Fails, Skipped };

std::string to_string(CheckStatus status);

struct OrderingCheck {
  std::string inequality;
  CheckStatus status;
};

struct CompareReport {
  Rational v_bp;
  Rational v_expost;
  GatedValue v_credible;
  GatedValue v_cheap;
  bool sender_order_exists = false;
  std::vector<OrderingCheck> checks;
  /// Known values from largest to smallest, e.g. "expost = bp > credible".
  std::string ordering;
};

CompareReport compare_report(const Game& game, const Belief& prior);

}  // namespace expost
