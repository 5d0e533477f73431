#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace expost {

/// Exact rational scalar. GMP keeps every value canonical (lowest terms,
/// positive denominator), so equality is structural.
using Rational = mpq_class;
using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on anything else,
/// including decimal points and zero denominators.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

std::string to_string(const Vector& values);

double to_double(const Rational& value);

Rational sum(const Vector& values);

Rational dot(const Vector& a, const Vector& b);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace expost
