#include <doctest.h>

#include <stdexcept>

#include "expost/lp.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace expost;
using fixtures::q;

TEST_CASE("parse and print rationals") {
  CHECK(parse_rational("3/6") == q(1, 2));
  CHECK(parse_rational("-4") == q(-4));
  CHECK(to_string(parse_rational("-10/4")) == "-5/2");
  CHECK_THROWS_AS(parse_rational("10/-4"), std::invalid_argument);
  CHECK(to_string(q(6, 3)) == "2");
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2x"), std::invalid_argument);
}

TEST_CASE("to_string round-trips") {
  gen::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const Rational x = rng.rational(50, 40);
    CHECK(parse_rational(to_string(x)) == x);
  }
}

TEST_CASE("small program with a known optimum") {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3.
  LinearProgram lp(2);
  lp.objective = {q(3), q(2)};
  lp.add_constraint({q(1), q(1)}, Relation::LessEqual, 4);
  lp.add_constraint({q(1), q(3)}, Relation::LessEqual, 6);
  lp.upper_bounds[0] = q(3);
  const LPSolution sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.value == 11);
  CHECK(sol.assignment == Vector{q(3), q(1)});
  CHECK(is_feasible(lp, sol.assignment));
}

TEST_CASE("equality and greater-equal rows") {
  // max x - y, x + y = 1, y >= 1/3.
  LinearProgram lp(2);
  lp.objective = {q(1), q(-1)};
  lp.add_constraint({q(1), q(1)}, Relation::Equal, 1);
  lp.add_constraint({q(0), q(1)}, Relation::GreaterEqual, q(1, 3));
  const LPSolution sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.value == q(1, 3));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram bad(1);
  bad.objective = {q(1)};
  bad.add_constraint({q(1)}, Relation::GreaterEqual, 2);
  bad.add_constraint({q(1)}, Relation::LessEqual, 1);
  CHECK(solve(bad).status == LPStatus::Infeasible);

  LinearProgram open(2);
  open.objective = {q(1), q(1)};
  open.add_constraint({q(1), q(-1)}, Relation::LessEqual, 1);
  CHECK(solve(open).status == LPStatus::Unbounded);
}

TEST_CASE("degenerate program terminates") {
  // Beale's cycling example.
  LinearProgram lp(4);
  lp.objective = {q(3, 4), q(-150), q(1, 50), q(-6)};
  lp.add_constraint({q(1, 4), q(-60), q(-1, 25), q(9)}, Relation::LessEqual, 0);
  lp.add_constraint({q(1, 2), q(-90), q(-1, 50), q(3)}, Relation::LessEqual, 0);
  lp.add_constraint({q(0), q(0), q(1), q(0)}, Relation::LessEqual, 1);
  const LPSolution sol = solve(lp);
  REQUIRE(sol.optimal());
  CHECK(sol.value == q(1, 20));
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram lp(2);
  lp.constraints.push_back({{q(1)}, Relation::LessEqual, q(1)});
  CHECK_THROWS_AS(lp.validate(), std::invalid_argument);
  CHECK_THROWS_AS(LinearProgram(0).validate(), std::invalid_argument);
}

namespace {

// Best objective over intersections of pairs of boundary lines of a
// two-variable program inside the box [0, 6]^2.
Rational vertex_oracle(const LinearProgram& lp) {
  std::vector<Vector> lines;  // a x + b y = c
  for (const auto& c : lp.constraints) lines.push_back({c.coefficients[0], c.coefficients[1], c.rhs});
  lines.push_back({q(1), q(0), q(0)});
  lines.push_back({q(0), q(1), q(0)});
  lines.push_back({q(1), q(0), q(6)});
  lines.push_back({q(0), q(1), q(6)});
  std::optional<Rational> best;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Rational det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
      if (sgn(det) == 0) continue;
      const Vector x = {(lines[i][2] * lines[j][1] - lines[i][1] * lines[j][2]) / det,
                        (lines[i][0] * lines[j][2] - lines[i][2] * lines[j][0]) / det};
      if (!is_feasible(lp, x)) continue;
      const Rational value = dot(lp.objective, x);
      if (!best || value > *best) best = value;
    }
  }
  return best ? *best : Rational(-1000000);
}

}  // namespace

TEST_CASE("two-variable programs agree with vertex enumeration") {
  gen::Rng rng(5);
  int feasible = 0;
  for (int t = 0; t < 300; ++t) {
    LinearProgram lp(2);
    lp.objective = {rng.rational(5), rng.rational(5)};
    lp.upper_bounds = {q(6), q(6)};
    const int rows = static_cast<int>(rng.integer(1, 4));
    for (int r = 0; r < rows; ++r) {
      lp.add_constraint({rng.rational(4), rng.rational(4)}, Relation::LessEqual, rng.rational(8));
    }
    const LPSolution sol = solve(lp);
    if (!sol.optimal()) {
      CHECK(sol.status == LPStatus::Infeasible);
      CHECK(vertex_oracle(lp) == -1000000);
      continue;
    }
    ++feasible;
    CHECK(is_feasible(lp, sol.assignment));
    CHECK(sol.value == vertex_oracle(lp));
  }
  CHECK(feasible > 100);
}
