#include "expost/trading.hpp"

#include <algorithm>

namespace expost {

TradingCertificate classify_trading(const Game& game) {
  const std::size_t n = game.num_actions();
  if (game.num_states() != n) {
    throw DimensionMismatch("trading games are square, got " + std::to_string(n) + " actions and " +
                            std::to_string(game.num_states()) + " states");
  }
  const Matrix& u = game.receiver;
  const Matrix& v = game.sender;
  TradingCertificate cert;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(u[i][k]) < 0 || (i > k && sgn(u[i][k]) != 0)) cert.violations.push_back({1, i, i, k});
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j <= k; ++j) {
        if (u[i][k] > u[j][k]) cert.violations.push_back({2, i, j, k});
      }
    }
  }
  Vector c(n);
  bool surplus_ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = v[k][k] + u[k][k];
    if (sgn(c[k]) <= 0) {
      cert.violations.push_back({3, k, k, k});
      surplus_ok = false;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (v[i][k] + u[i][k] != c[k]) {
        cert.violations.push_back({3, i, k, k});
        surplus_ok = false;
      }
    }
  }
  if (surplus_ok) cert.welfare_constants = std::move(c);
  cert.is_trading = cert.violations.empty();
  return cert;
}

Belief indifference_posterior(const Game& game, const std::set<std::size_t>& support) {
  const std::size_t n = game.num_states();
  if (support.empty()) throw NoSolution("support is empty");
  if (game.num_actions() != n) throw DimensionMismatch("indifference posterior needs a square game");
  const std::vector<std::size_t> s(support.begin(), support.end());
  if (s.back() >= n) throw NoSolution("support index " + std::to_string(s.back()) + " out of range");

  // Upper-triangular system: sum_{k in S, k >= i} u(i,k) mu_k = 1 for i in S,
  // solved from the largest index down and normalised afterwards.
  Vector mu(n, Rational(0));
  for (std::size_t r = s.size(); r-- > 0;) {
    const std::size_t i = s[r];
    if (sgn(game.receiver[i][i]) <= 0) {
      throw NoSolution("diagonal entry u(" + std::to_string(i) + "," + std::to_string(i) +
                       ") must be positive");
    }
    Rational rest = 1;
    for (std::size_t q = r + 1; q < s.size(); ++q) rest -= game.receiver[i][s[q]] * mu[s[q]];
    mu[i] = rest / game.receiver[i][i];
    if (sgn(mu[i]) < 0) throw NoSolution("indifference requires negative mass");
  }
  const Rational total = sum(mu);
  for (auto& x : mu) x /= total;
  Belief belief(std::move(mu));

  const BestResponseResult br = best_response(game, belief);
  for (std::size_t k : s) {
    if (std::find(br.tied_actions.begin(), br.tied_actions.end(), k) == br.tied_actions.end()) {
      throw NoSolution("action " + std::to_string(k) + " is not optimal at the indifference belief");
    }
  }
  return belief;
}

DecompositionResult trading_decompose(const Game& game, const Belief& prior) {
  check_dimensions(game, prior);
  const TradingCertificate cert = classify_trading(game);
  if (!cert.is_trading) {
    const auto& w = cert.violations.front();
    throw NotTradingGame("condition " + std::to_string(w.condition) + " fails at (" +
                         std::to_string(w.i + 1) + "," + std::to_string(w.j + 1) + "," +
                         std::to_string(w.k + 1) + ")");
  }
  const std::size_t n = game.num_states();
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(prior[k]) > 0) keep.push_back(k);
  }
  const Game sub = square_subgame(game, keep);

  DecompositionResult result;
  result.outcome.pi.assign(n, Vector(n, Rational(0)));
  Vector residual(keep.size());
  for (std::size_t q = 0; q < keep.size(); ++q) residual[q] = prior[keep[q]];

  while (std::any_of(residual.begin(), residual.end(), [](const Rational& x) { return sgn(x) > 0; })) {
    std::set<std::size_t> support;
    for (std::size_t q = 0; q < residual.size(); ++q) {
      if (sgn(residual[q]) > 0) support.insert(q);
    }
    const Belief local = indifference_posterior(sub, support);
    std::optional<Rational> weight;
    for (std::size_t q : support) {
      if (sgn(local[q]) == 0) continue;
      Rational ratio = residual[q] / local[q];
      if (!weight || ratio < *weight) weight = std::move(ratio);
    }
    for (std::size_t q = 0; q < residual.size(); ++q) residual[q] -= *weight * local[q];

    Vector full(n, Rational(0));
    for (std::size_t q = 0; q < keep.size(); ++q) full[keep[q]] = local[q];
    Belief posterior(std::move(full));
    const std::size_t action = best_response(game, posterior).action_index;
    for (std::size_t k = 0; k < n; ++k) result.outcome.pi[action][k] += *weight * posterior[k];
    result.value += *weight * sender_utility(game, action, posterior);
    result.scheme.signals.push_back({posterior, *weight, action});

    std::set<std::size_t> original_support;
    for (std::size_t q : support) original_support.insert(keep[q]);
    Vector full_residual(n, Rational(0));
    for (std::size_t q = 0; q < keep.size(); ++q) full_residual[keep[q]] = residual[q];
    result.trace.steps.push_back(
        {std::move(original_support), std::move(posterior), *weight, std::move(full_residual), action});
  }
  return result;
}

namespace {

void require_increasing(const Vector& values) {
  if (values.empty()) throw NotIncreasing("at least one value is required");
  if (sgn(values.front()) <= 0) throw NotIncreasing("values must be positive");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] <= values[i - 1]) {
      throw NotIncreasing("value " + std::to_string(i + 1) + " does not exceed value " +
                          std::to_string(i));
    }
  }
}

std::vector<std::string> labels(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

}  // namespace

Game make_bilateral_trade(const Vector& values) {
  require_increasing(values);
  const std::size_t n = values.size();
  Matrix v(n, Vector(n, Rational(0)));
  Matrix u(n, Vector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i; k < n; ++k) {
      v[i][k] = values[k] - values[i];
      u[i][k] = values[i];
    }
  }
  return Game(labels("price", n), labels("value", n), std::move(v), std::move(u));
}

Game make_first_price_auction(const Vector& values, const std::optional<Matrix>& bids) {
  require_increasing(values);
  const std::size_t n = values.size();
  Matrix b(n, Vector(n, Rational(0)));
  if (bids) {
    if (bids->size() != n) throw BidOutOfRange("bid matrix needs one row per value");
    for (std::size_t i = 0; i < n; ++i) {
      if ((*bids)[i].size() != n) throw BidOutOfRange("bid row " + std::to_string(i + 1) + " has the wrong length");
      for (std::size_t j = i; j < n; ++j) b[i][j] = (*bids)[i][j];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) b[i][j] = values[i];
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      if (sgn(b[i][j]) < 0 || b[i][j] > values[j]) {
        throw BidOutOfRange("bid (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ") = " + to_string(b[i][j]) + " outside [0, " + to_string(values[j]) + "]");
      }
      if (i > 0 && b[i][j] < b[i - 1][j]) {
        throw BidMonotonicityViolated("bid (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                      ") is below the bid at the lower reserve");
      }
    }
  }
  Matrix v(n, Vector(n, Rational(0)));
  Matrix u(n, Vector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      v[i][j] = values[j] - b[i][j];
      u[i][j] = b[i][j];
    }
  }
  return Game(labels("reserve", n), labels("value", n), std::move(v), std::move(u));
}

}  // namespace expost
