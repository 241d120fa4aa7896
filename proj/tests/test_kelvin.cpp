#include <doctest.h>

#include <cmath>

#include "degen/almansi.hpp"
#include "degen/errors.hpp"
#include "degen/kelvin.hpp"
#include "degen/rng.hpp"
#include "degen/sampling.hpp"
#include "degen/weighted_operator.hpp"

using namespace degen;

TEST_CASE("kelvin_base on quadratic bases") {
  const int dim = 3;
  const Poly r2 = Poly::norm_sq(dim);

  SUBCASE("|x|^2 inverts to the constant 1 with weight 1") {
    const auto kb = kelvin_base(r2);
    CHECK(kb.transformed == Poly::constant(Rational(1), dim));
    CHECK(kb.weight == 1);
  }
  SUBCASE("t^2 + |x|^2 inverts to 1 + t^2 |x|^2") {
    const Poly base = Poly::constant(Rational(4), dim) + r2;
    const auto kb = kelvin_base(base);
    CHECK(kb.transformed == Poly::constant(Rational(1), dim) + Rational(4) * r2);
    CHECK(kb.weight == 1);
    // double inversion returns the base
    const auto back = kelvin_base(kb.transformed);
    CHECK(back.transformed == base);
    CHECK(back.weight == 1);
  }
  SUBCASE("shifted quadratic stays quadratic") {
    CounterRng rng(51);
    for (int round = 0; round < 20; ++round) {
      const Poly base = random_quadratic_base(rng, dim);
      const auto kb = kelvin_base(base);
      CHECK(kb.transformed.degree() <= 2);
      const auto back = kelvin_base(kb.transformed);
      CHECK(back.transformed == base);
    }
  }
}

TEST_CASE("Kelvin transform reference values") {
  const auto params = OperatorParams::make(2, Rational(3, 2), 1);
  const int dim = params.ambient_dim();
  const Poly r2 = Poly::norm_sq(dim);

  SUBCASE("constant maps to the pure radial power") {
    const auto image = kelvin_transform(
        RadialPowerExpr::from_poly(Poly::constant(Rational(1), dim)), params);
    const auto expected = RadialPowerExpr::power(
        r2, Rational(params.p) - params.dimension() / 2);
    CHECK(image == expected);
  }
  SUBCASE("involution on the radial power returns 1") {
    const auto e =
        RadialPowerExpr::power(r2, Rational(params.p) - params.dimension() / 2);
    const auto back = kelvin_transform(e, params);
    CHECK(back == RadialPowerExpr::from_poly(
                      Poly::constant(Rational(1), dim)));
  }
  SUBCASE("bubble profile is a fixed point") {
    const Poly base = Poly::constant(Rational(1), dim) + r2;
    const auto bubble =
        RadialPowerExpr::power(base, -params.bubble_decay());
    CHECK(kelvin_transform(bubble, params) == bubble);
  }
}

TEST_CASE("Kelvin involution on random algebra elements") {
  CounterRng rng(52);
  for (int round = 0; round < 100; ++round) {
    const int n = static_cast<int>(rng.next_long(1, 3));
    const Rational a = ratio(rng.next_long(4, 10), 4);
    const int p = 1 + static_cast<int>(rng.next_long(0, 1));
    if (Rational(2 * p) >= Rational(n) + 2 * a) continue;
    const auto params = OperatorParams::make(n, a, p);
    const RadialPowerExpr e = random_algebra_element(rng, params.ambient_dim());
    CHECK(kelvin_transform(kelvin_transform(e, params), params) == e);
  }
}

TEST_CASE("kelvin_pde_check on the critical bubble") {
  const auto params = OperatorParams::make(1, Rational(1), 1);
  const int dim = params.ambient_dim();
  const Poly base = Poly::constant(Rational(1), dim) + Poly::norm_sq(dim);
  const auto profile = RadialPowerExpr::power(base, -params.bubble_decay());

  CounterRng rng(53);
  std::vector<std::vector<double>> samples;
  for (int i = 0; i < 200; ++i) {
    auto x = rng.point_in_ball(dim, 2.0);
    x[dim - 1] += (x[dim - 1] >= 0 ? 0.25 : -0.25);  // keep off the plane
    samples.push_back(std::move(x));
  }
  // scaled bubble solves the PDE; K = 3 so c0 = 3^{1/4}
  const double c0 = std::pow(3.0, 0.25);
  const auto report = kelvin_pde_check(profile, params.alpha_critical(), params,
                                       samples, c0, 1e-9);
  CHECK(report.pass);
  CHECK(report.max_rel_residual <= 1e-9);

  const auto zero_report =
      kelvin_pde_check(RadialPowerExpr::zero(dim), params.alpha_critical(),
                       params, samples, 1.0, 1e-9);
  CHECK(zero_report.max_rel_residual == 0.0);
}

TEST_CASE("tau vanishes exactly at the critical exponent") {
  const auto params = OperatorParams::make(3, Rational(5, 4), 2);
  CHECK(params.tau(params.alpha_critical()) == 0);
}

TEST_CASE("product identities") {
  const auto params = OperatorParams::make(2, Rational(3, 2), 1);
  CHECK(product_A(1, Rational(2), 0, params) == 2 * params.dimension());
  CHECK(product_A(1, Rational(3), 3, params) == 0);

  CounterRng rng(54);
  for (int round = 0; round < 100; ++round) {
    const int n = static_cast<int>(rng.next_long(1, 4));
    const Rational a = ratio(rng.next_long(4, 12), 4);
    const auto p = OperatorParams::make(n, a, 1);
    const int m = static_cast<int>(rng.next_long(1, 5));
    const int k = static_cast<int>(rng.next_long(0, 6));
    const Rational t = random_rational(rng, 10, 4);
    CHECK(product_A(m, t, k, p) == product_B(m, t, k, p));
  }
  CHECK_THROWS_AS(product_A(0, Rational(1), 0, params), InvalidParams);
}

TEST_CASE("iterated eigen identity: negative-exponent branch") {
  // (-A~)^m (|x|^{2m-D-t} h) = (-1)^m B_{m,t} |x|^{-D-t-k} h  for harmonic h
  CounterRng rng(55);
  for (int round = 0; round < 20; ++round) {
    const int n = static_cast<int>(rng.next_long(1, 2));
    const Rational a = ratio(rng.next_long(4, 8), 4);
    const auto params = OperatorParams::make(n, a, 1);
    const int dim = params.ambient_dim();
    const int k = static_cast<int>(rng.next_long(0, 3));
    const auto& basis = harmonic_basis(k, params);
    if (basis.elements.empty()) continue;
    const Poly& h = basis.elements[0];
    const int m = static_cast<int>(rng.next_long(1, 3));
    const Rational t = random_rational(rng, 6, 3);
    const Rational D = params.dimension();

    const Poly r2 = Poly::norm_sq(dim);
    const RadialPowerExpr input =
        RadialPowerExpr::power(r2, (Rational(2 * m) - D - t - k) / 2) *
        RadialPowerExpr::from_poly(h);
    const RadialPowerExpr image = apply_power(input, params, m);
    const Rational sign = (m % 2 == 0) ? Rational(1) : Rational(-1);
    const RadialPowerExpr expected =
        sign * product_B(m, t, k, params) *
        (RadialPowerExpr::power(r2, (-D - t - k) / 2) *
         RadialPowerExpr::from_poly(h));
    CHECK(image == expected);
  }
}

TEST_CASE("inversion chain") {
  const auto params = OperatorParams::make(2, Rational(2), 2);  // D = 6, p = 2
  const int dim = params.ambient_dim();
  const Poly u_poly =
      Poly::constant(Rational(1), dim) + Poly::variable(0, dim);
  const auto u = RadialPowerExpr::from_poly(u_poly);

  const auto chain = inversion_chain(u, params);
  REQUIRE(chain.constants.size() == 2);
  CHECK(chain.constants[0] == 1);
  CHECK(chain.profiles[0] == u);
  // c_1 = (2p-2)(n+2a-2p)
  CHECK(chain.constants[1] ==
        Rational(2 * params.p - 2) * (params.dimension() - 2 * params.p));

  // f_i(0) = u(0) at every level
  for (const auto& f : chain.profiles)
    CHECK(f.as_polynomial().constant_term() == Rational(1));

  // chain consistency: (-A~)^i u* matches the closed form
  const auto u_star = kelvin_transform(u, params);
  for (int i = 0; i < params.p; ++i) {
    CHECK(apply_power(u_star, params, i) ==
          inversion_chain_level_expr(chain, i, params));
  }

  // extending past level p divides by zero and must refuse
  CHECK_THROWS_AS(inversion_chain(u, params, params.p + 1), DegenerateLevel);

  CHECK_THROWS_AS(
      inversion_chain(RadialPowerExpr::power(Poly::norm_sq(dim), Rational(1, 2)),
                      params),
      InvalidParams);
}

TEST_CASE("chain consistency for random polynomial inputs") {
  CounterRng rng(56);
  for (int round = 0; round < 12; ++round) {
    const int n = static_cast<int>(rng.next_long(2, 3));
    const auto params = OperatorParams::make(n, Rational(2), 2);
    const int dim = params.ambient_dim();
    const Poly u_poly = random_even_poly(rng, dim, 4, 4) +
                        Poly::constant(Rational(1), dim);
    const auto u = RadialPowerExpr::from_poly(u_poly);
    const auto chain = inversion_chain(u, params);
    const auto u_star = kelvin_transform(u, params);
    for (int i = 0; i < params.p; ++i)
      CHECK(apply_power(u_star, params, i) ==
            inversion_chain_level_expr(chain, i, params));
  }
}

TEST_CASE("asymptotic fit") {
  const auto params = OperatorParams::make(2, Rational(2), 2);
  const int dim = params.ambient_dim();
  const auto grid = WeightedQuadratureGrid::build(params, 10);
  const std::vector<double> radii{100.0, 200.0, 400.0, 800.0, 1600.0};

  SUBCASE("exact radial power") {
    const Rational l(3);
    const auto e = RadialPowerExpr::power(Poly::norm_sq(dim), -l / 2);
    const auto fit = asymptotic_fit(e, l, radii, grid);
    CHECK(fit.a0 == doctest::Approx(1.0).epsilon(1e-10));
    for (double aj : fit.a) CHECK(std::abs(aj) < 1e-8);
    CHECK(fit.residual_order_estimate > 50.0);  // machine-exact remainder
  }
  SUBCASE("bubble decays at the fundamental order with a0 = 1") {
    const Poly base = Poly::constant(Rational(1), dim) + Poly::norm_sq(dim);
    const auto bubble = RadialPowerExpr::power(base, -params.bubble_decay());
    const Rational l = params.dimension() - 2 * params.p;
    const auto fit = asymptotic_fit(bubble, l, radii, grid);
    CHECK(fit.a0 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.residual_order_estimate >= to_double(l) + 1.5);
  }
  SUBCASE("first moment recovers the dipole coefficient") {
    // e = |x|^{-l}(1 + x_1/|x|^2) exactly
    const Poly r2 = Poly::norm_sq(dim);
    const Rational l(3);
    const auto e =
        RadialPowerExpr::power(r2, -l / 2) +
        Poly::variable(0, dim) * RadialPowerExpr::power(r2, -(l + 2) / 2);
    const auto fit = asymptotic_fit(e, l, radii, grid);
    CHECK(fit.a0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fit.a[0] == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("radii validation") {
    const auto e = RadialPowerExpr::power(Poly::norm_sq(dim), Rational(-1));
    CHECK_THROWS_AS(
        asymptotic_fit(e, Rational(2), std::vector<double>{1.0, 2.0, 3.0, 4.0},
                       grid),
        InvalidParams);
  }
}
