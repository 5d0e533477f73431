#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "expost/game.hpp"
#include "expost/greedy.hpp"

namespace gen {

using expost::Belief;
using expost::Game;
using expost::Matrix;
using expost::Rational;
using expost::Vector;
using expost::make_rational;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  bool coin(int percent = 50) { return integer(1, 100) <= percent; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, long(n) - 1)); }

  /// p/q with |p/q| <= range and q in 1..max_den.
  Rational rational(long range, long max_den = 4) {
    const long den = integer(1, max_den);
    return make_rational(integer(-range * den, range * den), den);
  }
  Rational positive(long range, long max_den = 4) {
    const long den = integer(1, max_den);
    return make_rational(integer(1, range * den), den);
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), engine_);
  }

 private:
  std::mt19937_64 engine_;
};

inline Matrix matrix(Rng& rng, std::size_t rows, std::size_t cols, long range, long max_den = 3) {
  Matrix m(rows, Vector(cols));
  for (auto& row : m) {
    for (auto& x : row) x = rng.rational(range, max_den);
  }
  return m;
}

inline Game game(Rng& rng, std::size_t actions, std::size_t states, long range = 6) {
  return Game::from_matrices(matrix(rng, actions, states, range), matrix(rng, actions, states, range));
}

/// Random weights normalised to one. With `interior`, every entry is positive.
inline Belief prior(Rng& rng, std::size_t states, bool interior = true) {
  Vector w(states);
  Rational total = 0;
  for (auto& x : w) {
    x = interior || rng.coin(70) ? Rational(rng.integer(1, 12)) : Rational(0);
    total += x;
  }
  if (total == 0) {
    w[rng.index(states)] = 1;
    total = 1;
  }
  for (auto& x : w) x /= total;
  return Belief(std::move(w));
}

/// Strictly increasing positive rationals.
inline Vector increasing(Rng& rng, std::size_t n) {
  Vector out;
  Rational cur = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cur += rng.positive(3, 3);
    out.push_back(cur);
  }
  return out;
}

/// Sender utility weakly decreasing in the action index in every state.
inline Matrix ordered_sender(Rng& rng, std::size_t actions, std::size_t states,
                             bool state_independent = false) {
  Matrix v(actions, Vector(states));
  for (std::size_t t = 0; t < states; ++t) {
    Rational cur = rng.integer(0, 10);
    for (std::size_t a = actions; a-- > 0;) {
      if (state_independent && t > 0) {
        v[a][t] = v[a][0];
        continue;
      }
      v[a][t] = cur;
      cur += rng.coin(20) ? Rational(0) : rng.positive(3, 2);
    }
  }
  return v;
}

/// Rows of `m` reordered by a random permutation.

/// Two-state receiver utility in which every action is a best response
/// somewhere. Most actions own an interval of beliefs; some only touch the
/// envelope at a threshold and some duplicate another action's line.
inline Matrix undominated_binary_receiver(Rng& rng, std::size_t actions, long range = 6) {
  std::size_t owners = std::max<std::size_t>(1, actions - static_cast<std::size_t>(rng.integer(0, long(actions) / 3)));
  Vector cuts;
  while (cuts.size() + 1 < owners) {
    const Rational c = make_rational(rng.integer(1, 23), 24);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  // Line i is slope[i] * x + icpt[i] with x = mu(theta_1); consecutive lines meet at cuts.
  Vector slope(owners);
  Vector icpt(owners);
  slope[0] = rng.rational(range, 2);
  icpt[0] = rng.rational(range, 2);
  for (std::size_t i = 1; i < owners; ++i) {
    slope[i] = slope[i - 1] + rng.positive(range, 2);
    icpt[i] = icpt[i - 1] + (slope[i - 1] - slope[i]) * cuts[i - 1];
  }
  Matrix u;
  for (std::size_t i = 0; i < owners; ++i) u.push_back({slope[i] + icpt[i], icpt[i]});
  while (u.size() < actions) {
    if (cuts.empty() || rng.coin(30)) {
      u.push_back(u[rng.index(owners)]);
      continue;
    }
    // Through the envelope at a cut with a slope strictly between its neighbours.
    const std::size_t c = rng.index(cuts.size());
    const Rational s = (slope[c] + slope[c + 1]) / 2;
    const Rational y = slope[c] * cuts[c] + icpt[c];
    const Rational b = y - s * cuts[c];
    u.push_back({s + b, b});
  }
  return u;
}

/// Sender ranks actions the same way in every state (in a random action
/// order) and every receiver action is a best response somewhere.
inline Game standing_assumption_game(Rng& rng, std::size_t actions, long range = 6,
                                     bool state_independent = false) {
  Matrix v = ordered_sender(rng, actions, 2, state_independent || rng.coin(30));
  rng.shuffle(v);
  Matrix u = undominated_binary_receiver(rng, actions, range);
  rng.shuffle(u);
  return Game::from_matrices(std::move(v), std::move(u));
}

/// Credence parameters with loss >= 10 * largest price.
inline expost::CredenceParams credence_params(Rng& rng, std::size_t n) {
  expost::CredenceParams p;
  p.prices = increasing(rng, n);
  Vector m = increasing(rng, n);
  std::reverse(m.begin(), m.end());
  p.margins = m;
  p.loss = 10 * p.prices.back() + rng.integer(0, 5);
  p.offset = p.prices.back() + p.loss + rng.positive(4, 2);
  return p;
}

/// Positive receiver matrix passing both greedy conditions, found by
/// perturbing a credence matrix and rejecting failures.
inline Matrix conditioned_receiver(Rng& rng, std::size_t n) {
  for (;;) {
    expost::CredenceParams p;
    p.prices = increasing(rng, n);
    p.margins = Vector(n);
    p.loss = rng.positive(static_cast<long>(4 * n), 2) + p.prices.back();
    p.offset = p.prices.back() + p.loss + rng.positive(4, 2);
    Matrix u(n, Vector(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        u[i][j] = p.offset - p.prices[i] - (i < j ? p.loss : Rational(0));
        if (rng.coin(40)) u[i][j] *= make_rational(rng.integer(8, 12), 10);
      }
    }
    if (expost::check_conditions(u).both()) return u;
  }
}

}  // namespace gen
