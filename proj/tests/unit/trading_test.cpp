#include <doctest.h>

#include "expost/trading.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace expost;
using fixtures::q;

TEST_CASE("bilateral trade is a trading game") {
  const Game g = make_bilateral_trade({q(1), q(2), q(4)});
  const TradingCertificate c = classify_trading(g);
  CHECK(c.is_trading);
  CHECK(c.violations.empty());
  REQUIRE(c.welfare_constants.has_value());
  CHECK(*c.welfare_constants == Vector{q(1), q(2), q(4)});
}

TEST_CASE("factory invariants") {
  CHECK_THROWS_AS(make_bilateral_trade({q(2), q(1)}), NotIncreasing);
  CHECK_THROWS_AS(make_bilateral_trade({q(0), q(1)}), NotIncreasing);
  const Vector values = {q(1), q(2), q(3)};
  Matrix over(3, Vector(3, Rational(0)));
  over[0] = {q(1), q(5), q(1)};
  CHECK_THROWS_AS(make_first_price_auction(values, over), BidOutOfRange);
  Matrix falling = {{q(1), q(1), q(2)}, {q(0), q(2), q(1)}, {q(0), q(0), q(3)}};
  CHECK_THROWS_AS(make_first_price_auction(values, falling), BidMonotonicityViolated);
  CHECK(classify_trading(make_first_price_auction(values)).is_trading);
}

TEST_CASE("non-trading games report a violation") {
  const Game g = Game::from_matrices({{q(1), q(1)}, {q(1), q(1)}}, {{q(1), q(2)}, {q(1), q(1)}});
  const TradingCertificate c = classify_trading(g);
  CHECK_FALSE(c.is_trading);
  REQUIRE_FALSE(c.violations.empty());
  CHECK(c.violations.front().condition == 1);
  CHECK_THROWS_AS(trading_decompose(g, Belief::uniform(2)), NotTradingGame);
  CHECK_THROWS_AS(classify_trading(fixtures::lending()), DimensionMismatch);
}

TEST_CASE("indifference posterior equalises the support") {
  const Game g = make_bilateral_trade({q(1), q(2), q(4)});
  const Belief b = indifference_posterior(g, {0, 1, 2});
  const Rational r0 = receiver_utility(g, 0, b);
  CHECK(receiver_utility(g, 1, b) == r0);
  CHECK(receiver_utility(g, 2, b) == r0);
  const Belief pair = indifference_posterior(g, {1, 2});
  CHECK(pair[0] == 0);
  CHECK(receiver_utility(g, 1, pair) == receiver_utility(g, 2, pair));
}

TEST_CASE("decomposition is optimal, feasible and ex-post IR") {
  gen::Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng.index(3);
    const Vector values = gen::increasing(rng, n);
    const Game g = rng.coin() ? make_bilateral_trade(values) : make_first_price_auction(values);
    const Belief prior = gen::prior(rng, n, rng.coin(70));
    const DecompositionResult d = trading_decompose(g, prior);
    CHECK(d.value == solve_bp(g, prior).value);
    CHECK(is_valid_outcome(d.outcome, g, prior));
    CHECK(is_expost_ir(d.outcome, g, prior));
    CHECK(scheme_to_outcome(d.scheme, n) == d.outcome);
    for (std::size_t s = 1; s < d.trace.steps.size(); ++s) {
      CHECK(d.trace.steps[s].support.size() < d.trace.steps[s - 1].support.size());
    }
  }
}
