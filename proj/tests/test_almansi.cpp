#include <doctest.h>

#include "degen/almansi.hpp"
#include "degen/errors.hpp"
#include "degen/rng.hpp"
#include "degen/sampling.hpp"
#include "degen/weighted_operator.hpp"

using namespace degen;

TEST_CASE("even monomial enumeration and dimensions") {
  CHECK(even_homogeneous_dimension(0, 2) == 1);
  CHECK(even_homogeneous_dimension(1, 2) == 1);  // {x1}
  CHECK(even_homogeneous_dimension(2, 2) == 2);  // {x1^2, x2^2}
  CHECK(even_homogeneous_dimension(-2, 2) == 0);
  CHECK(even_monomials_up_to(2, 2).size() == 4);
}

TEST_CASE("solve_T on the reference inputs") {
  const auto params = OperatorParams::make(1, Rational(1), 1);
  const int dim = 2;
  const Poly r2 = Poly::norm_sq(dim);

  // q = 1 satisfies T(q) = -A~ |x|^2
  CHECK(solve_T(r2, params) == Poly::constant(Rational(1), dim));

  // weighted-harmonic input needs no correction
  const Poly x1 = Poly::variable(0, dim);
  CHECK(solve_T(x1, params).is_zero());

  // x_last^2: q = 2a/(n+2a)
  const Poly last = Poly::variable(dim - 1, dim);
  CHECK(solve_T(last * last, params) ==
        Poly::constant(2 * params.a / params.dimension(), dim));

  CHECK_THROWS_AS(solve_T(Poly::variable(dim - 1, dim), params), OddParity);
}

TEST_CASE("decomposition of the reference inputs") {
  const auto params = OperatorParams::make(1, Rational(1), 1);
  const int dim = 2;
  const Poly r2 = Poly::norm_sq(dim);
  const Poly last = Poly::variable(dim - 1, dim);
  const Poly x1 = Poly::variable(0, dim);

  SUBCASE("|x|^2 = |x|^2 * 1") {
    const auto dec = almansi_decompose(r2, params);
    REQUIRE(dec.parts.size() == 1);
    CHECK(dec.parts[0].first == 1);
    CHECK(dec.parts[0].second == Poly::constant(Rational(1), dim));
  }
  SUBCASE("x_last^2 splits against 2a/(n+2a)") {
    const auto dec = almansi_decompose(last * last, params);
    REQUIRE(dec.parts.size() == 2);
    const Rational c = 2 * params.a / params.dimension();
    CHECK(dec.parts[0].first == 0);
    CHECK(dec.parts[0].second == last * last - c * r2);
    CHECK(dec.parts[1].first == 1);
    CHECK(dec.parts[1].second == Poly::constant(c, dim));
  }
  SUBCASE("x_1^2 splits against 1/(n+2a)") {
    const auto dec = almansi_decompose(x1 * x1, params);
    REQUIRE(dec.parts.size() == 2);
    const Rational c = Rational(1) / params.dimension();
    CHECK(dec.parts[0].second == x1 * x1 - c * r2);
    CHECK(dec.parts[1].second == Poly::constant(c, dim));
  }
  SUBCASE("zero input -> empty decomposition") {
    CHECK(almansi_decompose(Poly::zero(dim), params).parts.empty());
  }
  SUBCASE("non-homogeneous input is rejected") {
    CHECK_THROWS_AS(almansi_decompose(r2 + x1, params), NotHomogeneous);
  }
  SUBCASE("odd input is rejected") {
    CHECK_THROWS_AS(almansi_decompose(last, params), OddParity);
  }
}

TEST_CASE("is_weighted_harmonic") {
  const auto params = OperatorParams::make(2, Rational(5, 4), 1);
  const int dim = params.ambient_dim();
  CHECK(is_weighted_harmonic(Poly::constant(Rational(3), dim), params));
  const Poly x1 = Poly::variable(0, dim);
  const Poly last = Poly::variable(dim - 1, dim);
  CHECK(is_weighted_harmonic(
      x1 * x1 - Rational(1) / (2 * params.a) * (last * last), params));
  CHECK(!is_weighted_harmonic(Poly::norm_sq(dim), params));
}

TEST_CASE("harmonic bases") {
  const auto params = OperatorParams::make(1, Rational(1), 1);

  SUBCASE("degree 0 and 1") {
    CHECK(harmonic_basis(0, params).elements.size() == 1);
    const auto& deg1 = harmonic_basis(1, params);
    CHECK(deg1.elements.size() == 1);  // x1 only; x2 is odd
  }
  SUBCASE("degree 2 for n=1 is one-dimensional") {
    const auto& basis = harmonic_basis(2, params);
    REQUIRE(basis.elements.size() == 1);
    // span{ x1^2 - x2^2/(2a) } up to scaling
    const Poly expected =
        Rational(2) * (Poly::variable(0, 2) * Poly::variable(0, 2)) -
        Poly::variable(1, 2) * Poly::variable(1, 2);
    CHECK(Poly::compare(basis.elements[0], expected) == 0);
  }
  SUBCASE("cache returns the same object") {
    const auto& b1 = harmonic_basis(3, params);
    const auto& b2 = harmonic_basis(3, params);
    CHECK(&b1 == &b2);
  }
}

TEST_CASE("kernel correctness and rank identity") {
  CounterRng rng(41);
  for (int round = 0; round < 12; ++round) {
    const int n = static_cast<int>(rng.next_long(1, 3));
    const Rational a = ratio(rng.next_long(4, 10), 4);
    const auto params = OperatorParams::make(n, a, 1);
    const int m = static_cast<int>(rng.next_long(0, 5));
    const auto& basis = harmonic_basis(m, params);
    for (const auto& h : basis.elements) {
      CHECK(apply_weighted_laplacian(h, params).is_zero());
      CHECK(h.is_homogeneous());
      CHECK((h.is_zero() || h.degree() == m));
    }
    const long expected = even_homogeneous_dimension(m, params.ambient_dim()) -
                          even_homogeneous_dimension(m - 2, params.ambient_dim());
    CHECK(static_cast<long>(basis.elements.size()) == expected);
  }
}

TEST_CASE("round trip on random even homogeneous polynomials") {
  CounterRng rng(42);
  for (int round = 0; round < 40; ++round) {
    const int dim = static_cast<int>(rng.next_long(2, 4));
    const int n = dim - 1;
    const Rational a = (round % 3 == 0)   ? Rational(1)
                       : (round % 3 == 1) ? Rational(3, 2)
                                          : Rational(2);
    const auto params = OperatorParams::make(n, a, 1);
    const int deg = static_cast<int>(rng.next_long(0, 8));
    const Poly p = random_even_homogeneous_poly(rng, dim, deg, 5);
    const auto dec = almansi_decompose(p, params);
    CHECK(dec.reconstruct(dim) == p);
    for (const auto& [i, part] : dec.parts) {
      CHECK(is_weighted_harmonic(part, params));
      CHECK(!part.is_zero());
    }
  }
}

TEST_CASE("uniqueness: decomposing a synthetic sum returns its parts") {
  CounterRng rng(43);
  for (int round = 0; round < 10; ++round) {
    const auto params = OperatorParams::make(2, Rational(3, 2), 1);
    const int dim = params.ambient_dim();
    const int m = 6;
    const Poly r2 = Poly::norm_sq(dim);

    Poly assembled(dim);
    std::vector<std::pair<int, Poly>> used;
    for (int i = 0; 2 * i <= m; ++i) {
      const auto& basis = harmonic_basis(m - 2 * i, params);
      if (basis.elements.empty()) continue;
      Poly combo(dim);
      for (const auto& h : basis.elements)
        combo += random_rational(rng, 3, 2) * h;
      if (combo.is_zero()) continue;
      used.emplace_back(i, combo);
      assembled += r2.pow(static_cast<unsigned>(i)) * combo;
    }
    const auto dec = almansi_decompose(assembled, params);
    REQUIRE(dec.parts.size() == used.size());
    for (std::size_t k = 0; k < used.size(); ++k) {
      CHECK(dec.parts[k].first == used[k].first);
      CHECK(dec.parts[k].second == used[k].second);
    }
  }
}
