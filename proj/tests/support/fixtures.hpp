#pragma once

#include "expost/game.hpp"
#include "expost/greedy.hpp"

namespace fixtures {

using expost::Game;
using expost::Matrix;
using expost::Rational;
using expost::make_rational;

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

/// States (repay, default); actions reject, small, huge.
inline Game lending() {
  return Game({"reject", "small", "huge"}, {"repay", "default"},
              {{q(0), q(0)}, {q(1), q(1)}, {q(10), q(10)}},
              {{q(0), q(0)}, {q(7), q(-3)}, {q(7), q(-10)}});
}

inline Matrix quasi_receiver() {
  return {{q(8), q(0)}, {q(7), q(3)}, {q(0), q(8)}, {q(3), q(7)}};
}

inline Game quasi_first() {
  return Game::from_matrices({{q(4), q(4)}, {q(3), q(3)}, {q(2), q(2)}, {q(1), q(1)}},
                             quasi_receiver());
}

inline Game quasi_second() {
  return Game::from_matrices({{q(4), q(4)}, {q(7, 2), q(7, 2)}, {q(2), q(2)}, {q(1), q(1)}},
                             quasi_receiver());
}

inline Game compare_example1() {
  return Game::from_matrices({{q(0), q(0)}, {q(1, 2), q(1, 2)}, {q(4), q(4)}},
                             {{q(0), q(-16)}, {q(-4), q(-4)}, {q(-16), q(0)}});
}

inline Game compare_example2() {
  return Game::from_matrices({{q(1), q(1)}, {q(2), q(3)}}, {{q(1), q(1)}, {q(2), q(-1)}});
}

inline Game cheap_talk_example() {
  return Game::from_matrices(
      {{q(10), q(0)}, {q(-2), q(3)}, {q(1), q(1)}, {q(3), q(-2)}, {q(0), q(10)}},
      {{q(-4), q(21)}, {q(0), q(20)}, {q(12), q(12)}, {q(20), q(0)}, {q(21), q(-4)}});
}

/// Prices 1..4, loss 10, offset 14, margins 4..1.
inline expost::CredenceParams cyc_mono_params() {
  return {{q(1), q(2), q(3), q(4)}, {q(4), q(3), q(2), q(1)}, q(10), q(14)};
}

}  // namespace fixtures
