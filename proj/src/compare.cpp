#include "expost/compare.hpp"

#include <algorithm>

#include "expost/binary_geometry.hpp"
#include "expost/persuasion.hpp"

namespace expost {

bool is_additively_separable(const Matrix& m) {
  for (std::size_t t = 1; !m.empty() && t < m.front().size(); ++t) {
    const Rational diff = m.front()[t] - m.front()[0];
    for (const auto& row : m) {
      if (row[t] - row[0] != diff) return false;
    }
  }
  return true;
}

namespace {

// Sign of m(i+1,k+1) + m(i,k) - m(i+1,k) - m(i,k+1) must never be `forbidden`.
bool adjacent_differences_avoid(const Matrix& m, int forbidden) {
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    for (std::size_t k = 0; k + 1 < m[i].size(); ++k) {
      const Rational d = m[i + 1][k + 1] + m[i][k] - m[i + 1][k] - m[i][k + 1];
      if (sgn(d) == forbidden) return false;
    }
  }
  return true;
}

bool state_independent(const Matrix& m) {
  return std::all_of(m.begin(), m.end(), [](const Vector& row) {
    return std::all_of(row.begin(), row.end(), [&](const Rational& x) { return x == row.front(); });
  });
}

}  // namespace

bool is_supermodular(const Matrix& m) { return adjacent_differences_avoid(m, -1); }

bool is_submodular(const Matrix& m) { return adjacent_differences_avoid(m, 1); }

GatedValue credible_value(const Game& game, const Belief& prior) {
  GatedValue out;
  if (is_additively_separable(game.sender)) {
    out.status = GateStatus::Exact;
    out.value = solve_bp(game, prior).value;
    out.gate = "additively separable sender utility";
  } else if (is_supermodular(game.sender) && is_submodular(game.receiver)) {
    out.status = GateStatus::Exact;
    out.value = no_communication_value(game, prior);
    out.gate = "supermodular sender and submodular receiver utility";
  } else {
    out.gate = "no sufficient condition applies";
  }
  return out;
}

GatedValue cheap_talk_value(const Game& game, const Belief& prior) {
  GatedValue out;
  if (game.num_states() != 2) {
    out.gate = "requires two states";
    return out;
  }
  check_dimensions(game, prior);
  const PiecewiseLinear vhat = vhat_curve(game);
  if (vhat.is_continuous()) {
    out.status = GateStatus::Exact;
    out.value = solve_bp(game, prior).value;
    out.gate = "continuous expected sender utility";
  } else if (state_independent(game.sender)) {
    out.status = GateStatus::Exact;
    out.value = quasiconcave_closure(vhat).closure.evaluate(prior[0]);
    out.gate = "state-independent sender utility (quasiconcave closure)";
    out.external = true;
  } else {
    out.gate = "no sufficient condition applies";
  }
  return out;
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Holds:
      return "holds";
    case CheckStatus::Fails:
      return "fails";
    case CheckStatus::Skipped:
      return "skipped";
  }
  return "?";
}

CompareReport compare_report(const Game& game, const Belief& prior) {
  CompareReport r;
  r.v_bp = solve_bp(game, prior).value;
  r.v_expost = solve_expost(game, prior).value;
  r.v_credible = credible_value(game, prior);
  r.v_cheap = cheap_talk_value(game, prior);
  r.sender_order_exists = validate_game(game).ordering_exists;

  const auto check = [](bool known, bool holds) {
    if (!known) return CheckStatus::Skipped;
    return holds ? CheckStatus::Holds : CheckStatus::Fails;
  };
  r.checks.push_back({"bp >= credible", check(r.v_credible.exact(), r.v_bp >= r.v_credible.value)});
  r.checks.push_back({"bp >= expost", check(true, r.v_bp >= r.v_expost)});
  r.checks.push_back({"credible >= cheap", check(r.v_credible.exact() && r.v_cheap.exact(),
                                                 r.v_credible.value >= r.v_cheap.value)});
  // The ex-post sandwich is only claimed when the sender ranks actions.
  r.checks.push_back({"expost >= cheap", check(r.v_cheap.exact() && r.sender_order_exists,
                                               r.v_expost >= r.v_cheap.value)});

  std::vector<std::pair<std::string, Rational>> known = {{"expost", r.v_expost}, {"bp", r.v_bp}};
  if (r.v_credible.exact()) known.emplace_back("credible", r.v_credible.value);
  if (r.v_cheap.exact()) known.emplace_back("cheap", r.v_cheap.value);
  std::stable_sort(known.begin(), known.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (std::size_t i = 0; i < known.size(); ++i) {
    if (i > 0) r.ordering += known[i].second == known[i - 1].second ? " = " : " > ";
    r.ordering += known[i].first;
  }
  return r;
}

}  // namespace expost
