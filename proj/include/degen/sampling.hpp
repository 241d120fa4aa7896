#ifndef DEGEN_SAMPLING_HPP
#define DEGEN_SAMPLING_HPP

#include <vector>

#include "degen/poly.hpp"
#include "degen/radial_expr.hpp"
#include "degen/rng.hpp"

namespace degen {

inline Rational random_rational(CounterRng& rng, long max_num, long max_den) {
  const long num = rng.next_long(-max_num, max_num);
  const long den = rng.next_long(1, max_den);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational random_nonzero_rational(CounterRng& rng, long max_num,
                                        long max_den) {
  for (;;) {
    Rational q = random_rational(rng, max_num, max_den);
    if (q != 0) return q;
  }
}

/// Random polynomial with even powers of the last coordinate.
inline Poly random_even_poly(CounterRng& rng, int dim, int max_degree,
                             int max_terms) {
  Poly p(dim);
  const long terms = rng.next_long(1, max_terms);
  for (long t = 0; t < terms; ++t) {
    Monomial m = Monomial::unit(dim);
    int budget = static_cast<int>(rng.next_long(0, max_degree));
    for (int i = 0; i < dim && budget > 0; ++i) {
      int e = static_cast<int>(rng.next_long(0, budget));
      if (i == dim - 1 && e % 2 == 1) --e;
      m.exps[i] = static_cast<unsigned>(e);
      budget -= e;
    }
    p.add_term(m, random_rational(rng, 6, 4));
  }
  return p;
}

inline Poly random_even_homogeneous_poly(CounterRng& rng, int dim, int degree,
                                         int max_terms) {
  Poly p(dim);
  const long terms = rng.next_long(1, max_terms);
  for (long t = 0; t < terms; ++t) {
    Monomial m = Monomial::unit(dim);
    int budget = degree;
    for (int i = 0; i < dim - 1; ++i) {
      const int e = static_cast<int>(rng.next_long(0, budget));
      m.exps[i] = static_cast<unsigned>(e);
      budget -= e;
    }
    if (budget % 2 == 1) {
      // shift the leftover parity onto the first coordinate
      m.exps[0] += 1;
      budget -= 1;
    }
    m.exps[dim - 1] = static_cast<unsigned>(budget);
    p.add_term(m, random_rational(rng, 6, 4));
  }
  return p;
}

/// Quadratic base c + |x-b|^2 with c > 0 and b_last = 0, the admissible
/// family for Kelvin transforms.
inline Poly random_quadratic_base(CounterRng& rng, int dim) {
  Poly base(dim);
  Rational c = random_rational(rng, 4, 3);
  base += Poly::constant(c * c + 1, dim);  // strictly positive offset
  for (int i = 0; i < dim - 1; ++i) {
    const Poly shifted =
        Poly::variable(i, dim) - Poly::constant(random_rational(rng, 2, 2), dim);
    base += shifted * shifted;
  }
  const Poly last = Poly::variable(dim - 1, dim);
  base += last * last;
  return base;
}

/// Random admissible algebra element: terms with even coefficient
/// polynomials and factors over quadratic bases and |x|^2 with small
/// rational exponents.
inline RadialPowerExpr random_algebra_element(CounterRng& rng, int dim,
                                              int max_terms = 3) {
  RadialPowerExpr e = RadialPowerExpr::zero(dim);
  const long terms = rng.next_long(1, max_terms);
  for (long t = 0; t < terms; ++t) {
    std::vector<PowerFactor> factors;
    const long nf = rng.next_long(0, 2);
    for (long f = 0; f < nf; ++f) {
      Poly base = rng.next_double() < 0.3 ? Poly::norm_sq(dim)
                                          : random_quadratic_base(rng, dim);
      const long den = rng.next_long(1, 3);
      Rational expo(rng.next_long(-7, 7), den);
      expo.canonicalize();
      factors.emplace_back(std::move(base), expo);
    }
    e = e + RadialPowerExpr::make_term(random_even_poly(rng, dim, 3, 3),
                                       std::move(factors));
  }
  return e;
}

inline Poly random_poly(CounterRng& rng, int dim, int max_degree,
                        int max_terms) {
  Poly p(dim);
  const long terms = rng.next_long(1, max_terms);
  for (long t = 0; t < terms; ++t) {
    Monomial m = Monomial::unit(dim);
    int budget = static_cast<int>(rng.next_long(0, max_degree));
    for (int i = 0; i < dim && budget > 0; ++i) {
      const int e = static_cast<int>(rng.next_long(0, budget));
      m.exps[i] = static_cast<unsigned>(e);
      budget -= e;
    }
    p.add_term(m, random_rational(rng, 6, 4));
  }
  return p;
}

}  // namespace degen

#endif
