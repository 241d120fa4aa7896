#include <doctest.h>

#include "degen/errors.hpp"
#include "degen/poly.hpp"
#include "degen/poly_io.hpp"
#include "degen/rng.hpp"
#include "degen/sampling.hpp"

using namespace degen;

namespace {
Poly var(int i, int dim) { return Poly::variable(i, dim); }
}

TEST_CASE("rational parsing accepts num/den and rejects decimals") {
  CHECK(*parse_rational("3/2") == Rational(3, 2));
  CHECK(*parse_rational("-5") == Rational(-5));
  CHECK(*parse_rational("6/4") == Rational(3, 2));
  CHECK(!parse_rational("1.5"));
  CHECK(!parse_rational(""));
  CHECK(!parse_rational("1/"));
  CHECK(!parse_rational("/2"));
  CHECK(!parse_rational("1e3"));
  CHECK(!parse_rational("1/0"));
  CHECK(to_string(Rational(-7, 3)) == "-7/3");
}

TEST_CASE("exact rational powers") {
  CHECK(*exact_rational_pow(Rational(4), Rational(1, 2)) == Rational(2));
  CHECK(*exact_rational_pow(Rational(1, 4), Rational(-1, 2)) == Rational(2));
  CHECK(*exact_rational_pow(Rational(8, 27), Rational(2, 3)) == Rational(4, 9));
  CHECK(!exact_rational_pow(Rational(2), Rational(1, 2)));
  CHECK(*exact_rational_pow(Rational(5), Rational(-2)) == Rational(1, 25));
}

TEST_CASE("multiply: difference of squares, identity, monomials") {
  const int dim = 3;
  const Poly x1 = var(0, dim), x2 = var(1, dim);
  CHECK((x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2);
  const Poly p = x1 * x2 + Poly::constant(Rational(7, 2), dim);
  CHECK(p * Poly::constant(Rational(1), dim) == p);
  CHECK(x1 * x1 * (x2 * x2) == Poly::monomial(Monomial({2, 2, 0}), Rational(1)));
}

TEST_CASE("partial derivatives") {
  const int dim = 3;
  const Poly x1 = var(0, dim), x2 = var(1, dim);
  CHECK((x1 * x1).partial_derivative(0) == Rational(2) * x1);
  CHECK(x1.partial_derivative(dim - 1).is_zero());
  CHECK((x1 * x2).partial_derivative(0) == x2);
  CHECK_THROWS_AS(x1.partial_derivative(5), AxisOutOfRange);
}

TEST_CASE("homogeneous components partition the polynomial") {
  const int dim = 2;
  const Poly x1 = var(0, dim);
  auto parts = (x1 * x1 + x1).homogeneous_components();
  CHECK(parts.size() == 2);
  CHECK(parts.at(2) == x1 * x1);
  CHECK(parts.at(1) == x1);
  CHECK(Poly::zero(dim).homogeneous_components().empty());

  auto parts2 = (Poly::norm_sq(dim) + Poly::constant(Rational(3), dim))
                    .homogeneous_components();
  CHECK(parts2.at(2) == Poly::norm_sq(dim));
  CHECK(parts2.at(0) == Poly::constant(Rational(3), dim));
}

TEST_CASE("parity in the last variable") {
  const int dim = 3;
  const Poly last = var(dim - 1, dim);
  CHECK((last * last).is_even_in_last());
  CHECK(!(var(0, dim) * last).is_even_in_last());
  CHECK(Poly::constant(Rational(5), dim).is_even_in_last());
}

TEST_CASE("ring axioms hold exactly on random samples") {
  CounterRng rng(101);
  for (int round = 0; round < 40; ++round) {
    const int dim = static_cast<int>(rng.next_long(2, 4));
    const Poly a = random_poly(rng, dim, 4, 4);
    const Poly b = random_poly(rng, dim, 4, 4);
    const Poly c = random_poly(rng, dim, 4, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("homogeneous partition reconstructs bit-exactly") {
  CounterRng rng(102);
  for (int round = 0; round < 30; ++round) {
    const int dim = static_cast<int>(rng.next_long(2, 4));
    const Poly p = random_poly(rng, dim, 6, 6);
    Poly sum(dim);
    for (const auto& [deg, part] : p.homogeneous_components()) {
      CHECK(part.is_homogeneous());
      CHECK(part.degree() == deg);
      sum += part;
    }
    CHECK(sum == p);
  }
}

TEST_CASE("even-in-last is closed under products; odd derivative divides") {
  CounterRng rng(103);
  const Poly last2 = var(2, 3);
  for (int round = 0; round < 30; ++round) {
    const Poly a = random_even_poly(rng, 3, 5, 4);
    const Poly b = random_even_poly(rng, 3, 5, 4);
    CHECK((a * b).is_even_in_last());
    const Poly da = a.partial_derivative(2);
    if (!da.is_zero()) {
      auto q = da.divide_exact(last2);
      REQUIRE(q);
      CHECK(*q * last2 == da);
    }
  }
}

TEST_CASE("exact division detects non-divisibility") {
  const int dim = 2;
  const Poly x1 = var(0, dim), x2 = var(1, dim);
  CHECK(!x1.divide_exact(x2));
  const Poly r2 = Poly::norm_sq(dim);
  const Poly p = r2 * (x1 + x2) * (x1 + x2);
  auto q = p.divide_exact(r2);
  REQUIRE(q);
  CHECK(*q == (x1 + x2) * (x1 + x2));
  CHECK(!(p + Poly::constant(Rational(1), dim)).divide_exact(r2));
}

TEST_CASE("content") {
  const int dim = 2;
  const Poly p = ratio(4, 6) * var(0, dim) + Rational(2) * var(1, dim);
  CHECK(p.content() == Rational(2, 3));
  CHECK(Poly::zero(dim).content() == 0);
}

TEST_CASE("evaluation matches exact evaluation") {
  CounterRng rng(104);
  for (int round = 0; round < 20; ++round) {
    const Poly p = random_poly(rng, 3, 4, 5);
    std::vector<Rational> q{random_rational(rng, 3, 2),
                            random_rational(rng, 3, 2),
                            random_rational(rng, 3, 2)};
    std::vector<double> x{to_double(q[0]), to_double(q[1]), to_double(q[2])};
    CHECK(p.evaluate(x) ==
          doctest::Approx(to_double(p.evaluate_exact(q))).epsilon(1e-12));
  }
}

TEST_CASE("JSON round trip and rejection of decimal coefficients") {
  CounterRng rng(105);
  for (int round = 0; round < 10; ++round) {
    const Poly p = random_poly(rng, 3, 5, 6);
    CHECK(poly_from_json(poly_to_json(p)) == p);
  }
  const auto j =
      nlohmann::json::parse(R"({"dim":2,"terms":[{"coeff":"1","exps":[0,2]}]})");
  CHECK(poly_from_json(j) == Poly::monomial(Monomial({0, 2}), Rational(1)));

  CHECK(poly_from_json(nlohmann::json::parse(R"({"dim":2,"terms":[]})")).is_zero());
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(
                      R"({"dim":2,"terms":[{"coeff":"1.5","exps":[0,0]}]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(poly_from_json(nlohmann::json::parse(
                      R"({"dim":2,"terms":[{"coeff":"1","exps":[0]}]})")),
                  std::invalid_argument);
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(Poly::variable(0, 2) + Poly::variable(0, 3),
                  DimensionMismatch);
  CHECK_THROWS_AS(Poly::variable(0, 2) * Poly::variable(0, 3),
                  DimensionMismatch);
}
