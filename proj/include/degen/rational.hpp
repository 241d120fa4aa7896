#ifndef DEGEN_RATIONAL_HPP
#define DEGEN_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

namespace degen {

/// Exact arbitrary-precision rational scalar. mpq_class keeps values
/// canonical (reduced, positive denominator) through all arithmetic, but
/// NOT through the two-argument constructor; build quotients with ratio().
using Rational = mpq_class;

inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q);

/// Requires is_integer(q) and a value that fits in long.
long to_long(const Rational& q);

double to_double(const Rational& q);

/// base^exp for integer exp (negative allowed; base must be nonzero then).
Rational pow_rational(const Rational& base, long exp);

/// base^exp as an exact rational when the result is rational, nullopt
/// otherwise. Negative bases are handled only for integer exponents.
std::optional<Rational> exact_rational_pow(const Rational& base,
                                           const Rational& exp);

/// Accepts "num", "-num" or "num/den" with arbitrary-precision integer
/// parts. Decimal notation is rejected: spell 1.5 as "3/2".
std::optional<Rational> parse_rational(const std::string& text);

std::string to_string(const Rational& q);

}  // namespace degen

#endif
