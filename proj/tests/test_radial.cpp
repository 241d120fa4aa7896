#include <doctest.h>

#include <cmath>

#include "degen/errors.hpp"
#include "degen/radial_expr.hpp"
#include "degen/rng.hpp"
#include "degen/sampling.hpp"

using namespace degen;

namespace {

RadialPowerExpr one_plus_r2_pow(int dim, const Rational& gamma) {
  const Poly base = Poly::constant(Rational(1), dim) + Poly::norm_sq(dim);
  return RadialPowerExpr::power(base, gamma);
}

}  // namespace

TEST_CASE("chain rule on a power factor") {
  const int dim = 3;
  const Poly base = Poly::constant(Rational(5, 2), dim) + Poly::norm_sq(dim);
  const Rational gamma(-3, 2);
  const RadialPowerExpr e = RadialPowerExpr::power(base, gamma);
  // d/dx1 B^g = 2 g x1 B^{g-1}
  const RadialPowerExpr expected = RadialPowerExpr::make_term(
      2 * gamma * Poly::variable(0, dim), {PowerFactor(base, gamma - 1)});
  CHECK(e.differentiate(0) == expected);
}

TEST_CASE("derivative of a pure polynomial term delegates to the ring") {
  const int dim = 3;
  const Poly p = Poly::variable(0, dim) * Poly::variable(1, dim);
  const RadialPowerExpr e = RadialPowerExpr::from_poly(p);
  CHECK(e.differentiate(0) ==
        RadialPowerExpr::from_poly(p.partial_derivative(0)));
}

TEST_CASE("last-axis chain rule: (1+|x|^2)^{-1/2}") {
  const int dim = 2;
  const RadialPowerExpr e = one_plus_r2_pow(dim, Rational(-1, 2));
  const Poly base = Poly::constant(Rational(1), dim) + Poly::norm_sq(dim);
  const RadialPowerExpr expected = RadialPowerExpr::make_term(
      Rational(-1) * Poly::variable(dim - 1, dim),
      {PowerFactor(base, Rational(-3, 2))});
  CHECK(e.differentiate(dim - 1) == expected);
}

TEST_CASE("divide_by_last_coordinate") {
  const int dim = 3;
  const Poly last = Poly::variable(dim - 1, dim);
  CounterRng rng(7);
  const Poly q = random_even_poly(rng, dim, 3, 3);

  SUBCASE("polynomial multiple") {
    const RadialPowerExpr e = RadialPowerExpr::from_poly(last * q);
    CHECK(e.divide_by_last_coordinate() == RadialPowerExpr::from_poly(q));
  }
  SUBCASE("power factor coefficient") {
    const Poly base = Poly::constant(Rational(3), dim) + Poly::norm_sq(dim);
    const RadialPowerExpr e = RadialPowerExpr::make_term(
        Rational(2) * last, {PowerFactor(base, Rational(1, 2))});
    const RadialPowerExpr expected = RadialPowerExpr::make_term(
        Poly::constant(Rational(2), dim), {PowerFactor(base, Rational(1, 2))});
    CHECK(e.divide_by_last_coordinate() == expected);
  }
  SUBCASE("odd-parity violation") {
    const RadialPowerExpr e =
        RadialPowerExpr::from_poly(Poly::variable(0, dim));
    CHECK_THROWS_AS(e.divide_by_last_coordinate(), NotDivisible);
  }
}

TEST_CASE("evaluation") {
  const int dim = 2;
  const RadialPowerExpr e = one_plus_r2_pow(dim, Rational(-1, 2));
  const std::vector<double> origin{0.0, 0.0};
  CHECK(e.evaluate(origin) == doctest::Approx(1.0));

  const RadialPowerExpr r2 = RadialPowerExpr::from_poly(Poly::norm_sq(dim));
  const std::vector<double> p34{3.0, 4.0};
  CHECK(r2.evaluate(p34) == doctest::Approx(25.0));

  const RadialPowerExpr inv_r =
      RadialPowerExpr::power(Poly::norm_sq(dim), Rational(-1, 2));
  CHECK_THROWS_AS(inv_r.evaluate(origin), SingularEvaluation);
}

TEST_CASE("normalization") {
  const int dim = 2;
  const Poly base = Poly::constant(Rational(1), dim) + Poly::norm_sq(dim);
  const Poly q = Poly::variable(0, dim);

  SUBCASE("integer powers expand into the coefficient") {
    const RadialPowerExpr e =
        RadialPowerExpr::make_term(q, {PowerFactor(base, Rational(2))});
    CHECK(e.is_polynomial());
    CHECK(e.as_polynomial() == q * base * base);
  }
  SUBCASE("subtraction cancels to the empty form") {
    const RadialPowerExpr e = RadialPowerExpr::make_term(
        q, {PowerFactor(base, Rational(-5, 2))});
    CHECK((e - e).is_zero());
    CHECK((e + Rational(-1) * e).is_zero());
  }
  SUBCASE("like terms merge") {
    const RadialPowerExpr a = RadialPowerExpr::make_term(
        q, {PowerFactor(base, Rational(-1, 2))});
    const RadialPowerExpr b = RadialPowerExpr::make_term(
        Rational(3) * q, {PowerFactor(base, Rational(-1, 2))});
    const RadialPowerExpr sum = a + b;
    CHECK(sum.terms().size() == 1);
    CHECK(sum.terms()[0].coeff == Rational(4) * q);
  }
  SUBCASE("proportional bases unify when the scalar power is rational") {
    const RadialPowerExpr a =
        RadialPowerExpr::power(Rational(4) * base, Rational(-1, 2));
    const RadialPowerExpr b = Rational(1, 2) *
        RadialPowerExpr::power(base, Rational(-1, 2));
    CHECK(a == b);
  }
  SUBCASE("fractional exponents reduce to [0,1)") {
    const RadialPowerExpr a = RadialPowerExpr::power(base, Rational(3, 2));
    const RadialPowerExpr b = RadialPowerExpr::make_term(
        base, {PowerFactor(base, Rational(1, 2))});
    CHECK(a == b);
  }
  SUBCASE("negative powers strip divisible coefficients") {
    const RadialPowerExpr a = RadialPowerExpr::make_term(
        base * q, {PowerFactor(base, Rational(-3, 2))});
    const RadialPowerExpr b = RadialPowerExpr::make_term(
        q, {PowerFactor(base, Rational(-1, 2))});
    CHECK(a == b);
  }
}

TEST_CASE("base validation") {
  const int dim = 2;
  CHECK_THROWS_AS(PowerFactor(Poly::zero(dim), Rational(1, 2)), InvalidParams);
  CHECK_THROWS_AS(PowerFactor(Poly::variable(dim - 1, dim), Rational(1, 2)),
                  InvalidParams);  // odd in the last variable
  const Poly x1 = Poly::variable(0, dim);
  const Poly sextic = x1 * x1 * x1 * x1 * x1 * x1;
  CHECK_THROWS_AS(PowerFactor(sextic, Rational(1, 2)), InvalidParams);
}

TEST_CASE("mixed partials commute on random elements") {
  CounterRng rng(201);
  for (int round = 0; round < 25; ++round) {
    const int dim = static_cast<int>(rng.next_long(2, 3));
    const RadialPowerExpr e = random_algebra_element(rng, dim);
    const int i = static_cast<int>(rng.next_long(0, dim - 1));
    const int j = static_cast<int>(rng.next_long(0, dim - 1));
    CHECK(e.differentiate(i).differentiate(j) ==
          e.differentiate(j).differentiate(i));
  }
}

TEST_CASE("differentiation closure keeps elements well-formed") {
  CounterRng rng(202);
  for (int round = 0; round < 25; ++round) {
    const int dim = static_cast<int>(rng.next_long(2, 3));
    const RadialPowerExpr e = random_algebra_element(rng, dim);
    for (int axis = 0; axis < dim; ++axis) {
      const RadialPowerExpr d = e.differentiate(axis);
      CHECK(d.dim() == dim);
      for (const auto& t : d.terms())
        for (const auto& f : t.factors) {
          CHECK(f.base.is_even_in_last());
          CHECK(f.base.degree() <= 4);
        }
    }
  }
}

TEST_CASE("derivatives agree with central finite differences") {
  CounterRng rng(203);
  const int dim = 3;
  for (int round = 0; round < 12; ++round) {
    const RadialPowerExpr e = random_algebra_element(rng, dim, 2);
    const RadialPowerExpr de = e.differentiate(0);
    std::vector<double> x{rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0),
                          rng.uniform(0.2, 1.0)};
    const double h = 1e-5;
    auto xp = x, xm = x;
    xp[0] += h;
    xm[0] -= h;
    const double fd = (e.evaluate(xp) - e.evaluate(xm)) / (2 * h);
    const double exact = de.evaluate(x);
    CHECK(std::abs(fd - exact) <= 1e-6 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("even elements have divisible last derivatives") {
  CounterRng rng(204);
  for (int round = 0; round < 20; ++round) {
    const int dim = static_cast<int>(rng.next_long(2, 3));
    const RadialPowerExpr e = random_algebra_element(rng, dim);
    REQUIRE(e.is_even_in_last());
    CHECK_NOTHROW(e.differentiate(dim - 1).divide_by_last_coordinate());
  }
}

TEST_CASE("expression product distributes over evaluation") {
  CounterRng rng(205);
  const int dim = 2;
  for (int round = 0; round < 10; ++round) {
    const RadialPowerExpr a = random_algebra_element(rng, dim, 2);
    const RadialPowerExpr b = random_algebra_element(rng, dim, 2);
    std::vector<double> x{rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2)};
    CHECK((a * b).evaluate(x) ==
          doctest::Approx(a.evaluate(x) * b.evaluate(x)).epsilon(1e-10));
  }
}
