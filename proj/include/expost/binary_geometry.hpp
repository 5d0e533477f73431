#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "expost/game.hpp"

namespace expost {

/// Counts the elementary steps of the binary decision path: comparisons made
/// while sorting and iterations of the linear sweeps.
struct OpCounter {
  std::size_t sort_comparisons = 0;
  std::size_t sweep_steps = 0;

  std::size_t total() const { return sort_comparisons + sweep_steps; }
};

/// Best-response structure on [0,1], where x = mu(theta_1).
struct Partition {
  /// 0 = alpha_0 < alpha_1 < ... < alpha_k = 1.
  Vector thresholds;
  /// Sender-favoured best response on the open interval (alpha_i, alpha_i+1).
  std::vector<std::size_t> interval_actions;
  /// Sender-favoured best response at alpha_i.
  std::vector<std::size_t> threshold_actions;
  /// Closed set of beliefs where each action is a receiver best response,
  /// or nullopt for actions that are never optimal. Single points are
  /// represented as [x, x].
  std::vector<std::optional<std::pair<Rational, Rational>>> regions;
};

/// Piecewise-linear function on [0,1] with explicit values at breakpoints.
/// Piece i is slope[i] * x + intercept[i] on the open interval
/// (breakpoints[i], breakpoints[i+1]).
struct PiecewiseLinear {
  Vector breakpoints;
  Vector slopes;
  Vector intercepts;
  Vector point_values;

  std::size_t num_pieces() const { return slopes.size(); }
  Rational evaluate(const Rational& x) const;
  Rational piece_value(std::size_t piece, const Rational& x) const;
  Rational left_limit(std::size_t breakpoint) const;
  Rational right_limit(std::size_t breakpoint) const;
  /// Whether left limit, right limit and point value agree at every breakpoint.
  bool is_continuous() const;

  bool operator==(const PiecewiseLinear& other) const = default;
};

struct Point {
  Rational x;
  Rational y;

  bool operator==(const Point& other) const = default;
};

/// Polyline through vertices with strictly increasing x, from x = 0 to x = 1.
struct ClosureChain {
  std::vector<Point> vertices;

  Rational evaluate(const Rational& x) const;
  /// Slopes of consecutive segments.
  Vector slopes() const;
  PiecewiseLinear to_piecewise() const;

  bool operator==(const ClosureChain& other) const = default;
};

struct QuasiconcaveClosure {
  PiecewiseLinear closure;
  /// (beta_j, closure(beta_j)) for 0, 1 and every discontinuity.
  ClosureChain chain;
};

/// Throws NotBinary unless the game has exactly two states.
void require_binary(const Game& game);

/// Sorts receiver lines by slope and sweeps their upper envelope once;
/// O(n log n) overall.
Partition compute_partition(const Game& game, OpCounter* counter = nullptr);

PiecewiseLinear vhat_curve(const Game& game, const Partition& partition,
                           OpCounter* counter = nullptr);
PiecewiseLinear vhat_curve(const Game& game);

/// Upper hull of every piece endpoint limit and every point value.
ClosureChain concave_closure(const PiecewiseLinear& curve);

/// Concave closure restricted to posteriors whose recommendation is ex-post
/// IR for the given prior, evaluated at the prior.
Rational expost_closure_value(const Game& game, const Belief& prior);

/// min of the running maximum from the left and the running maximum from
/// the right, both taken over closed half-lines.
QuasiconcaveClosure quasiconcave_closure(const PiecewiseLinear& curve,
                                         OpCounter* counter = nullptr);

/// Chord interpolation through the quasiconcave chain.
PiecewiseLinear smoothed_quasiconcave_closure(const QuasiconcaveClosure& qc,
                                              OpCounter* counter = nullptr);

/// True when the chord slopes never increase from left to right.
bool gamma_is_concave(const PiecewiseLinear& gamma, OpCounter* counter = nullptr);

struct BinaryAnalysis {
  Partition partition;
  PiecewiseLinear vhat;
  ClosureChain concave;
  QuasiconcaveClosure quasiconcave;
  PiecewiseLinear gamma;
  bool expost_ir = false;
};

/// Partition, curve and gamma verdict only; no linear program is solved.
bool decide_expost_ir(const Game& game, OpCounter* counter = nullptr);

BinaryAnalysis analyze_binary(const Game& game);

/// Every breakpoint of the analysed curves plus the midpoints between
/// consecutive ones.
Vector sample_points(const BinaryAnalysis& analysis);

/// CSV with header x,vhat,concave,quasiconcave,gamma and exact p/q cells.
/// With `decimal`, an approximate column follows each exact one.
void write_curves_csv(std::ostream& out, const BinaryAnalysis& analysis, bool decimal = false);

}  // namespace expost
