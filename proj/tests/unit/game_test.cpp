#include <doctest.h>

#include "expost/game.hpp"
#include "support/fixtures.hpp"

using namespace expost;
using fixtures::q;

TEST_CASE("belief invariants") {
  CHECK_THROWS_AS(Belief({q(1, 2), q(1, 3)}), InvalidBelief);
  CHECK_THROWS_AS(Belief({q(3, 2), q(-1, 2)}), InvalidBelief);
  CHECK(Belief::uniform(4)[2] == q(1, 4));
  CHECK(Belief::binary(q(1, 3)).probabilities() == Vector{q(1, 3), q(2, 3)});
  CHECK(Belief::point_mass(3, 1).probabilities() == Vector{q(0), q(1), q(0)});
}

TEST_CASE("game shape is checked") {
  CHECK_THROWS_AS(Game::from_matrices({{q(1)}}, {{q(1)}, {q(2)}}), InvalidGame);
  CHECK_THROWS_AS(Game({"a"}, {"s", "t"}, {{q(1), q(1)}}, {{q(1)}}), InvalidGame);
  const Game g = fixtures::lending();
  CHECK_THROWS_AS(check_dimensions(g, Belief::uniform(3)), InvalidBelief);
}

TEST_CASE("best response on the lending game") {
  const Game g = fixtures::lending();
  const BestResponseResult at_half = best_response(g, Belief::binary(q(1, 2)));
  CHECK(g.actions[at_half.action_index] == "small");
  CHECK(at_half.receiver_value == 2);
  CHECK(no_communication_value(g, Belief::binary(q(1, 2))) == 1);
  // Everything repays: small and huge tie at 7, the sender prefers huge.
  const BestResponseResult sure = best_response(g, Belief::binary(q(1)));
  CHECK(g.actions[sure.action_index] == "huge");
  CHECK(sure.tied_actions.size() == 2);
  CHECK(expected_sender_utility(g, Belief::binary(q(1))) == 10);
  CHECK(expected_sender_utility(g, Belief::binary(q(0))) == 0);
}

TEST_CASE("sender order detection") {
  const Game g = fixtures::lending();
  CHECK_FALSE(satisfies_sender_order(g));
  const ValidationReport r = validate_game(g);
  REQUIRE(r.ordering_exists);
  CHECK(r.order == std::vector<std::size_t>{2, 1, 0});
  CHECK(satisfies_sender_order(r.game));
  CHECK(r.never_best.empty());
  CHECK_FALSE(validate_game(fixtures::cheap_talk_example()).ordering_exists);
}

TEST_CASE("never-best actions are pruned") {
  // The middle action is strictly worse than a mix of the other two.
  const Game g = Game::from_matrices({{q(1), q(1)}, {q(2), q(2)}, {q(3), q(3)}},
                                     {{q(4), q(0)}, {q(1), q(1)}, {q(0), q(4)}});
  CHECK_FALSE(is_best_response_somewhere(g, 1));
  CHECK(is_best_response_somewhere(g, 0));
  const PrunedGame p = prune_never_best(g);
  CHECK(p.game.num_actions() == 2);
  CHECK(p.original_index == std::vector<std::size_t>{0, 2});
}

TEST_CASE("square subgame keeps matching actions and states") {
  const Game s = square_subgame(Game::from_matrices(
                                    {{q(1), q(2), q(3)}, {q(4), q(5), q(6)}, {q(7), q(8), q(9)}},
                                    {{q(1), q(2), q(3)}, {q(4), q(5), q(6)}, {q(7), q(8), q(9)}}),
                                {0, 2});
  CHECK(s.receiver == Matrix{{q(1), q(3)}, {q(7), q(9)}});
}
