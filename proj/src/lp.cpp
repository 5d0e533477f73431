#include "expost/lp.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace expost {

LinearProgram::LinearProgram(std::size_t num_variables)
    : objective(num_variables, Rational(0)),
      lower_bounds(num_variables, Rational(0)),
      upper_bounds(num_variables) {}

void LinearProgram::add_constraint(Vector coefficients, Relation relation, Rational rhs) {
  constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LinearProgram::validate() const {
  const std::size_t n = objective.size();
  if (n == 0) throw std::invalid_argument("linear program has no variables");
  if (lower_bounds.size() != n || upper_bounds.size() != n) {
    throw std::invalid_argument("bound vectors do not match the number of variables");
  }
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    if (constraints[r].coefficients.size() != n) {
      throw std::invalid_argument("constraint " + std::to_string(r) +
                                  " has the wrong number of coefficients");
    }
  }
}

std::string to_string(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "Optimal";
    case LPStatus::Infeasible: return "Infeasible";
    case LPStatus::Unbounded: return "Unbounded";
  }
  return "?";
}

bool is_feasible(const LinearProgram& lp, const Vector& x) {
  if (x.size() != lp.num_variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lp.lower_bounds[j]) return false;
    if (lp.upper_bounds[j] && x[j] > *lp.upper_bounds[j]) return false;
  }
  for (const auto& c : lp.constraints) {
    const Rational lhs = dot(c.coefficients, x);
    switch (c.relation) {
      case Relation::LessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::Equal:
        if (lhs != c.rhs) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < c.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

enum class ColumnKind { Structural, Slack, Artificial };

// Dense tableau; the last entry of every row is the right-hand side. Pivots
// only touch the nonzero entries of the pivot row and rows with a nonzero in
// the pivot column, which keeps the sparse obedience systems cheap.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows, Vector(cols + 1, Rational(0))), basis_(rows, 0), cols_(cols) {}

  Rational& at(std::size_t r, std::size_t c) { return rows_[r][c]; }
  Rational& rhs(std::size_t r) { return rows_[r][cols_]; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t num_cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc, Vector& objective_row) {
    Vector& prow = rows_[pr];
    const Rational inv = 1 / prow[pc];
    nonzero_.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        nonzero_.push_back(j);
      }
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != pr) eliminate(rows_[i], prow, pc);
    }
    eliminate(objective_row, prow, pc);
    basis_[pr] = pc;
  }

  void erase_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  void eliminate(Vector& row, const Vector& prow, std::size_t pc) {
    if (sgn(row[pc]) == 0) return;
    const Rational factor = row[pc];
    for (std::size_t j : nonzero_) row[j] -= factor * prow[j];
  }

  std::vector<Vector> rows_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
  std::size_t cols_;
};

// Maximizes with reduced costs held in `objective_row` (entry j is the
// reduced cost of column j; the last entry is minus the current value).
// Returns false when the program is unbounded along some column.
bool run_simplex(Tableau& t, Vector& objective_row, const std::vector<bool>& may_enter) {
  const std::size_t cols = t.num_cols();
  for (;;) {
    std::size_t entering = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (may_enter[j] && sgn(objective_row[j]) > 0) {
        entering = j;
        break;
      }
    }
    if (entering == cols) return true;

    std::size_t leaving = t.num_rows();
    Rational best_ratio;
    for (std::size_t r = 0; r < t.num_rows(); ++r) {
      if (sgn(t.at(r, entering)) <= 0) continue;
      Rational ratio = t.rhs(r) / t.at(r, entering);
      if (leaving == t.num_rows() || ratio < best_ratio ||
          (ratio == best_ratio && t.basis()[r] < t.basis()[leaving])) {
        leaving = r;
        best_ratio = std::move(ratio);
      }
    }
    if (leaving == t.num_rows()) return false;
    t.pivot(leaving, entering, objective_row);
  }
}

struct Row {
  Vector coefficients;
  Relation relation;
  Rational rhs;

  bool operator==(const Row& other) const {
    return relation == other.relation && rhs == other.rhs &&
           coefficients == other.coefficients;
  }
};

}  // namespace

namespace {
std::atomic<std::size_t> solve_calls{0};
}  // namespace

std::size_t solve_call_count() { return solve_calls.load(); }

LPSolution solve(const LinearProgram& lp) {
  ++solve_calls;
  lp.validate();
  const std::size_t n = lp.num_variables();

  // Shift to x = lower + y with y >= 0; upper bounds become rows on y.
  std::vector<Row> rows;
  rows.reserve(lp.constraints.size() + n);
  for (const auto& c : lp.constraints) {
    rows.push_back({c.coefficients, c.relation, c.rhs - dot(c.coefficients, lp.lower_bounds)});
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!lp.upper_bounds[j]) continue;
    Vector e(n, Rational(0));
    e[j] = 1;
    rows.push_back({std::move(e), Relation::LessEqual, *lp.upper_bounds[j] - lp.lower_bounds[j]});
  }

  std::vector<Row> unique_rows;
  unique_rows.reserve(rows.size());
  for (auto& r : rows) {
    if (std::find(unique_rows.begin(), unique_rows.end(), r) == unique_rows.end()) {
      unique_rows.push_back(std::move(r));
    }
  }

  for (auto& r : unique_rows) {
    if (sgn(r.rhs) < 0) {
      for (auto& a : r.coefficients) a = -a;
      r.rhs = -r.rhs;
      if (r.relation == Relation::LessEqual) {
        r.relation = Relation::GreaterEqual;
      } else if (r.relation == Relation::GreaterEqual) {
        r.relation = Relation::LessEqual;
      }
    }
  }

  // Column layout: structural | slack/surplus | artificial.
  std::size_t num_slack = 0;
  std::size_t num_artificial = 0;
  for (const auto& r : unique_rows) {
    if (r.relation != Relation::Equal) ++num_slack;
    if (r.relation != Relation::LessEqual) ++num_artificial;
  }
  const std::size_t cols = n + num_slack + num_artificial;
  std::vector<ColumnKind> kind(cols, ColumnKind::Structural);
  for (std::size_t j = n; j < n + num_slack; ++j) kind[j] = ColumnKind::Slack;
  for (std::size_t j = n + num_slack; j < cols; ++j) kind[j] = ColumnKind::Artificial;

  Tableau t(unique_rows.size(), cols);
  std::size_t next_slack = n;
  std::size_t next_artificial = n + num_slack;
  for (std::size_t r = 0; r < unique_rows.size(); ++r) {
    const Row& row = unique_rows[r];
    for (std::size_t j = 0; j < n; ++j) t.at(r, j) = row.coefficients[j];
    t.rhs(r) = row.rhs;
    switch (row.relation) {
      case Relation::LessEqual:
        t.at(r, next_slack) = 1;
        t.basis()[r] = next_slack++;
        break;
      case Relation::GreaterEqual:
        t.at(r, next_slack++) = -1;
        t.at(r, next_artificial) = 1;
        t.basis()[r] = next_artificial++;
        break;
      case Relation::Equal:
        t.at(r, next_artificial) = 1;
        t.basis()[r] = next_artificial++;
        break;
    }
  }

  LPSolution result;

  // Phase 1: maximize -(sum of artificials).
  if (num_artificial > 0) {
    Vector phase1(cols + 1, Rational(0));
    for (std::size_t j = 0; j < cols; ++j) {
      if (kind[j] == ColumnKind::Artificial) phase1[j] = -1;
    }
    for (std::size_t r = 0; r < t.num_rows(); ++r) {
      if (kind[t.basis()[r]] != ColumnKind::Artificial) continue;
      for (std::size_t j = 0; j <= cols; ++j) phase1[j] += t.at(r, j);
    }
    std::vector<bool> all(cols, true);
    run_simplex(t, phase1, all);
    if (sgn(phase1[cols]) != 0) {
      result.status = LPStatus::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis; rows with no other
    // nonzero are redundant and dropped.
    for (std::size_t r = 0; r < t.num_rows();) {
      if (kind[t.basis()[r]] != ColumnKind::Artificial) {
        ++r;
        continue;
      }
      std::size_t pc = cols;
      for (std::size_t j = 0; j < cols; ++j) {
        if (kind[j] != ColumnKind::Artificial && sgn(t.at(r, j)) != 0) {
          pc = j;
          break;
        }
      }
      if (pc == cols) {
        t.erase_row(r);
      } else {
        t.pivot(r, pc, phase1);
        ++r;
      }
    }
  }

  // Phase 2 on the original objective.
  Vector phase2(cols + 1, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    const std::size_t b = t.basis()[r];
    if (sgn(phase2[b]) == 0) continue;
    const Rational factor = phase2[b];
    for (std::size_t j = 0; j <= cols; ++j) {
      if (sgn(t.at(r, j)) != 0) phase2[j] -= factor * t.at(r, j);
    }
  }
  std::vector<bool> may_enter(cols);
  for (std::size_t j = 0; j < cols; ++j) may_enter[j] = kind[j] != ColumnKind::Artificial;
  if (!run_simplex(t, phase2, may_enter)) {
    result.status = LPStatus::Unbounded;
    return result;
  }

  result.status = LPStatus::Optimal;
  result.assignment = lp.lower_bounds;
  for (std::size_t r = 0; r < t.num_rows(); ++r) {
    const std::size_t b = t.basis()[r];
    if (b < n) result.assignment[b] += t.rhs(r);
  }
  result.value = dot(lp.objective, result.assignment);
  if (!is_feasible(lp, result.assignment)) {
    throw std::logic_error("simplex returned an infeasible assignment");
  }
  return result;
}

}  // namespace expost
