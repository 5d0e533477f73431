#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "expost/game.hpp"
#include "expost/persuasion.hpp"

namespace expost {

struct TradingViolation {
  /// 1: receiver utility upper-triangular and non-negative.
  /// 2: non-zero part of each receiver column non-decreasing downwards.
  /// 3: constant positive total surplus per state on and above the diagonal.
  int condition;
  std::size_t i;
  std::size_t j;
  std::size_t k;
};

struct TradingCertificate {
  bool is_trading = false;
  std::vector<TradingViolation> violations;
  /// c_k = v(a_k, theta_k) + u(a_k, theta_k); present when condition 3 holds.
  std::optional<Vector> welfare_constants;
};

/// Throws DimensionMismatch unless the game is square.
TradingCertificate classify_trading(const Game& game);

/// Belief supported on `support` (0-based state indices) that makes the
/// receiver indifferent among a_k for k in support, each of them optimal.
/// Throws NoSolution when the conditions that guarantee it fail, including a
/// zero diagonal entry inside the support.
Belief indifference_posterior(const Game& game, const std::set<std::size_t>& support);

struct DecompositionStep {
  std::set<std::size_t> support;
  Belief posterior;
  Rational weight;
  /// Unnormalised prior mass still to be assigned after this step.
  Vector residual;
  std::size_t induced_action;
};

struct DecompositionTrace {
  std::vector<DecompositionStep> steps;
};

struct DecompositionResult {
  DecompositionTrace trace;
  SignalingScheme scheme;
  OutcomeDistribution outcome;
  Rational value;
};

/// Repeatedly peels the indifference posterior of the current support off
/// the remaining prior. States with zero prior are removed together with the
/// same-index action first. Throws NotTradingGame.
DecompositionResult trading_decompose(const Game& game, const Belief& prior);

/// Buyer-seller pricing: action a_i posts price values[i]; receiver gets the
/// price when the buyer's value covers it, sender gets value minus price.
/// Throws NotIncreasing unless 0 < values[0] < values[1] < ...
Game make_bilateral_trade(const Vector& values);

/// Reserve-price auction with bid matrix b[i][j] used for i <= j (entries
/// below the diagonal are ignored). Without bids, b[i][j] = values[i].
/// Throws NotIncreasing, BidOutOfRange, BidMonotonicityViolated.
Game make_first_price_auction(const Vector& values, const std::optional<Matrix>& bids = std::nullopt);

}  // namespace expost
