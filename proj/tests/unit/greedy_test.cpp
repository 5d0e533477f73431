#include <doctest.h>

#include "expost/greedy.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace expost;
using fixtures::q;

TEST_CASE("credence matrix satisfies both conditions") {
  const Game g = make_credence_game(fixtures::cyc_mono_params());
  CHECK(g.receiver[0] == Vector{q(13), q(3), q(3), q(3)});
  const ConditionReport r = check_conditions(g.receiver);
  CHECK(r.cyclically_monotone);
  CHECK(r.log_check_applicable);
  CHECK(r.weakly_log_supermodular);
  CHECK(r.witnesses.empty());
}

TEST_CASE("condition witnesses") {
  const Matrix flipped = {{q(1), q(3)}, {q(2), q(1)}};
  const ConditionReport r = check_conditions(flipped);
  CHECK_FALSE(r.cyclically_monotone);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().condition == "cyclical_monotonicity");

  const ConditionReport zero = check_conditions({{q(2), q(0)}, {q(1), q(1)}});
  CHECK_FALSE(zero.log_check_applicable);
  CHECK_FALSE(zero.weakly_log_supermodular);
  CHECK_THROWS_AS(check_conditions({{q(1), q(2)}}), DimensionMismatch);
}

TEST_CASE("credence parameters are validated") {
  CredenceParams p = fixtures::cyc_mono_params();
  p.prices = {q(2), q(1), q(3), q(4)};
  CHECK_THROWS_AS(make_credence_game(p), ParamInvariantViolated);
  p = fixtures::cyc_mono_params();
  p.margins = {q(1), q(2), q(3), q(4)};
  CHECK_THROWS_AS(make_credence_game(p), ParamInvariantViolated);
  p = fixtures::cyc_mono_params();
  p.offset = q(5);
  CHECK_THROWS_AS(make_credence_game(p), ParamInvariantViolated);
}

TEST_CASE("first greedy round on the credence example") {
  const CredenceParams params = fixtures::cyc_mono_params();
  const Game g = make_credence_game(params);
  const GreedyTrace t = greedy_scheme(g, Belief::uniform(4));
  REQUIRE(t.rounds.size() == 4);
  CHECK(t.rounds[0].mass == q(5, 14));
  CHECK(t.exhausted);
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    CHECK(t.rounds[i].mass == perturbation_loss_mass(params, t.rounds[i].budget, i));
    CHECK(round_uses_up_budget(t.rounds[i]));
  }
}

TEST_CASE("greedy on credence games reaches the persuasion value") {
  gen::Rng rng(51);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng.index(3);
    const CredenceParams params = gen::credence_params(rng, n);
    const Game g = make_credence_game(params);
    const Belief prior = gen::prior(rng, n);
    const GapBound b = greedy_gap_bound(g, prior);
    CHECK(b.v_greedy == b.v_bp);
    CHECK(b.v_expost == b.v_bp);
    CHECK(b.greedy_expost_ir);
    CHECK(b.bound_holds);
  }
}

TEST_CASE("greedy always exhausts the prior on square games") {
  gen::Rng rng(52);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 2 + rng.index(3);
    const Game g = gen::game(rng, n, n, 3);
    const bool interior = rng.coin(70);
    const Belief prior = gen::prior(rng, n, interior);
    const GreedyTrace trace = run_greedy(g, prior);
    CHECK(trace.exhausted);
    // Actions paired with zero-prior states take no part in the rounds.
    if (!interior) continue;
    CHECK(is_valid_outcome(trace.outcome, g, prior));
    CHECK(trace.value == outcome_sender_value(trace.outcome, g));
    CHECK(trace.value <= solve_bp(g, prior).value);
  }
}

TEST_CASE("gap bound refuses games outside the conditions") {
  const Game g = Game::from_matrices({{q(1), q(1)}, {q(0), q(0)}}, {{q(1), q(3)}, {q(2), q(1)}});
  CHECK_THROWS_AS(greedy_gap_bound(g, Belief::uniform(2)), ConditionsNotMet);
  CHECK_THROWS_AS(run_greedy(fixtures::lending(), Belief::uniform(2)), DimensionMismatch);
}
