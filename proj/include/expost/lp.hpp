#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "expost/rational.hpp"

namespace expost {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  Vector coefficients;
  Relation relation;
  Rational rhs;
};

/// maximize objective . x  subject to  constraints,  lower <= x <= upper.
///
/// Lower bounds default to 0; upper bounds are optional per variable.
struct LinearProgram {
  Vector objective;
  std::vector<Constraint> constraints;
  Vector lower_bounds;
  std::vector<std::optional<Rational>> upper_bounds;

  LinearProgram() = default;
  explicit LinearProgram(std::size_t num_variables);

  std::size_t num_variables() const { return objective.size(); }

  void add_constraint(Vector coefficients, Relation relation, Rational rhs);

  /// Throws std::invalid_argument when vector lengths disagree or the
  /// program has no variables.
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LPStatus status);

struct LPSolution {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  Vector assignment;

  bool optimal() const { return status == LPStatus::Optimal; }
};

/// Two-phase primal simplex over exact rationals using Bland's least-index
/// rule for both the entering and the leaving variable, so it terminates on
/// degenerate programs. The only presolve step drops exact duplicate rows.
/// Same input gives the same assignment.
LPSolution solve(const LinearProgram& lp);

/// Number of solve() calls made by this process so far.
std::size_t solve_call_count();

/// True when `x` satisfies every constraint and bound of `lp` exactly.
bool is_feasible(const LinearProgram& lp, const Vector& x);

}  // namespace expost
