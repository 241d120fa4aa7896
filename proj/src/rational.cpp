#include "degen/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace degen {

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long to_long(const Rational& q) {
  if (!is_integer(q)) throw std::invalid_argument("to_long: not an integer");
  if (!q.get_num().fits_slong_p())
    throw std::overflow_error("to_long: value does not fit in long");
  return q.get_num().get_si();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational pow_rational(const Rational& base, long exp) {
  if (exp == 0) return Rational(1);
  const bool invert = exp < 0;
  const unsigned long e = invert ? static_cast<unsigned long>(-exp)
                                 : static_cast<unsigned long>(exp);
  if (invert && base == 0)
    throw std::domain_error("pow_rational: zero base with negative exponent");
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
  Rational r = invert ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

std::optional<Rational> exact_rational_pow(const Rational& base,
                                           const Rational& exp) {
  if (is_integer(exp)) {
    if (base == 0 && exp < 0) return std::nullopt;
    return pow_rational(base, to_long(exp));
  }
  if (base < 0) return std::nullopt;
  if (base == 0) return exp > 0 ? std::optional<Rational>(Rational(0))
                                : std::nullopt;

  const mpz_class u = exp.get_num();
  const unsigned long v = exp.get_den().get_ui();
  const bool invert = u < 0;
  mpz_class uabs = abs(u);
  if (!uabs.fits_ulong_p()) return std::nullopt;

  mpz_class num_pow, den_pow;
  mpz_pow_ui(num_pow.get_mpz_t(), base.get_num().get_mpz_t(), uabs.get_ui());
  mpz_pow_ui(den_pow.get_mpz_t(), base.get_den().get_mpz_t(), uabs.get_ui());

  mpz_class num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), num_pow.get_mpz_t(), v) == 0)
    return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), den_pow.get_mpz_t(), v) == 0)
    return std::nullopt;

  Rational r = invert ? Rational(den_root, num_root)
                      : Rational(num_root, den_root);
  r.canonicalize();
  return r;
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  if (text[pos] == '+' || text[pos] == '-') ++pos;
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    return std::nullopt;
  bool seen_slash = false;
  for (std::size_t i = pos; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) continue;
    if (c == '/' && !seen_slash && i + 1 < text.size() && i > pos) {
      seen_slash = true;
      continue;
    }
    return std::nullopt;  // rejects '.', exponents, whitespace
  }
  Rational q;
  if (q.set_str(text, 10) != 0) return std::nullopt;
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace degen
