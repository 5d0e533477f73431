#include <doctest.h>

#include <sstream>

#include "expost/binary_geometry.hpp"
#include "expost/persuasion.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace expost;
using fixtures::q;

TEST_CASE("lending partition and curves") {
  const Game g = fixtures::lending();
  const Partition p = compute_partition(g);
  // reject below 3/10, small up to 1, huge only at 1.
  CHECK(p.thresholds == Vector{q(0), q(3, 10), q(1)});
  CHECK(p.interval_actions == std::vector<std::size_t>{0, 1});
  CHECK(p.threshold_actions == std::vector<std::size_t>{0, 1, 2});
  REQUIRE(p.regions[2].has_value());
  CHECK(p.regions[2]->first == 1);
  CHECK(p.regions[2]->second == 1);

  const PiecewiseLinear vhat = vhat_curve(g);
  CHECK_FALSE(vhat.is_continuous());
  CHECK(vhat.evaluate(q(1)) == 10);
  CHECK(vhat.evaluate(q(1, 2)) == 1);
  CHECK(concave_closure(vhat).evaluate(q(1, 2)) == 5);
  CHECK(expost_closure_value(g, Belief::binary(q(1, 2))) == q(25, 7));
}

TEST_CASE("lending gamma is not concave") {
  const BinaryAnalysis a = analyze_binary(fixtures::lending());
  CHECK(a.gamma.slopes.size() >= 2);
  CHECK_FALSE(a.expost_ir);
  CHECK_FALSE(decide_expost_ir(fixtures::lending()));
}

TEST_CASE("quasiconcave closure examples") {
  const BinaryAnalysis first = analyze_binary(fixtures::quasi_first());
  const BinaryAnalysis second = analyze_binary(fixtures::quasi_second());
  CHECK(first.quasiconcave.chain.slopes() == Vector{q(2), q(4), q(0)});
  CHECK(second.quasiconcave.chain.slopes() == Vector{q(3), q(2), q(0)});
  CHECK_FALSE(first.expost_ir);
  CHECK(second.expost_ir);
}

TEST_CASE("non-binary games are refused") {
  const Game g = Game::from_matrices({{q(1), q(1), q(1)}}, {{q(1), q(1), q(1)}});
  CHECK_THROWS_AS(require_binary(g), NotBinary);
  CHECK_THROWS_AS(analyze_binary(g), NotBinary);
}

TEST_CASE("curve CSV") {
  std::ostringstream out;
  write_curves_csv(out, analyze_binary(fixtures::lending()));
  std::string header;
  std::istringstream in(out.str());
  std::getline(in, header);
  CHECK(header == "x,vhat,concave,quasiconcave,gamma");
  std::string first_row;
  std::getline(in, first_row);
  CHECK(first_row.rfind("0,", 0) == 0);
}

TEST_CASE("closures bound the curve and match the programs") {
  gen::Rng rng(31);
  for (int t = 0; t < 80; ++t) {
    const Game g = gen::game(rng, 2 + rng.index(4), 2);
    const BinaryAnalysis a = analyze_binary(g);
    for (const Rational& x : sample_points(a)) {
      CHECK(a.vhat.evaluate(x) <= a.quasiconcave.closure.evaluate(x));
      CHECK(a.quasiconcave.closure.evaluate(x) <= a.concave.evaluate(x));
    }
    const Belief prior = Belief::binary(rng.positive(1, 5) / 2);
    CHECK(a.concave.evaluate(prior[0]) == solve_bp(g, prior).value);
    CHECK(expost_closure_value(g, prior) == solve_expost(g, prior).value);
  }
}

TEST_CASE("concave closure chord slopes never increase") {
  gen::Rng rng(32);
  for (int t = 0; t < 100; ++t) {
    const ClosureChain c = concave_closure(vhat_curve(gen::game(rng, 2 + rng.index(5), 2)));
    const Vector s = c.slopes();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) CHECK(s[i] > s[i + 1]);
    CHECK(c.vertices.front().x == 0);
    CHECK(c.vertices.back().x == 1);
  }
}
