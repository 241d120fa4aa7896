#include "degen/weighted_operator.hpp"

#include "degen/errors.hpp"

namespace degen {

Poly apply_weighted_laplacian(const Poly& p, const OperatorParams& params) {
  const int dim = p.dim();
  Poly out(dim);
  for (int i = 0; i < dim; ++i)
    out += p.partial_derivative(i).partial_derivative(i);
  const Poly dlast = p.partial_derivative(dim - 1);
  if (!dlast.is_zero()) {
    auto q = dlast.divide_exact(Poly::variable(dim - 1, dim));
    if (!q)
      throw NotDivisible(
          "apply_weighted_laplacian: input is not even in x_last");
    out += (2 * params.a - 1) * (*q);
  }
  return out;
}

RadialPowerExpr apply_weighted_laplacian(const RadialPowerExpr& e,
                                         const OperatorParams& params) {
  const int dim = e.dim();
  RadialPowerExpr out = RadialPowerExpr::zero(dim);
  for (int i = 0; i < dim; ++i)
    out = out + e.differentiate(i).differentiate(i);
  const RadialPowerExpr dlast = e.differentiate(dim - 1);
  if (!dlast.is_zero())
    out = out + (2 * params.a - 1) * dlast.divide_by_last_coordinate();
  return out;
}

Poly apply_power(const Poly& p, const OperatorParams& params, int k) {
  if (k < 0) throw InvalidParams("apply_power: k must be >= 0");
  Poly out = p;
  for (int i = 0; i < k; ++i)
    out = -apply_weighted_laplacian(out, params);
  return out;
}

RadialPowerExpr apply_power(const RadialPowerExpr& e,
                            const OperatorParams& params, int k) {
  if (k < 0) throw InvalidParams("apply_power: k must be >= 0");
  RadialPowerExpr out = e;
  for (int i = 0; i < k; ++i)
    out = -apply_weighted_laplacian(out, params);
  return out;
}

Rational eigen_factor(const Rational& t, int k, const OperatorParams& params) {
  const Rational shift = params.dimension() - 2;
  const Rational kk(k);
  return t * (t + shift) - kk * (kk + shift);
}

HalfSpacePoly apply_A_halfspace(const HalfSpacePoly& u,
                                const OperatorParams& params) {
  const int dim = u.poly.dim();
  const int y_axis = dim - 1;
  const Poly uy = u.poly.partial_derivative(y_axis);
  Poly out = Poly::variable(y_axis, dim) * uy.partial_derivative(y_axis);
  out += params.a * uy;
  for (int i = 0; i + 1 < dim; ++i)
    out += u.poly.partial_derivative(i).partial_derivative(i);
  return HalfSpacePoly{out};
}

Poly substitute_parabolic(const HalfSpacePoly& u) {
  const int dim = u.poly.dim();
  Poly out(dim);
  for (const auto& [m, c] : u.poly.terms()) {
    const unsigned ey = m.exps.back();
    Monomial sub = m;
    sub.exps.back() = 2 * ey;
    out.add_term(sub, c / pow_rational(Rational(4), ey));
  }
  return out;
}

bool check_vanishing_odd_derivatives(const HalfSpacePoly& u, int order) {
  const Poly v = substitute_parabolic(u);
  const int dim = v.dim();
  Poly d = v;
  for (int l = 1; l <= order; ++l) {
    // advance to the (2l-1)-th derivative
    d = d.partial_derivative(dim - 1);
    Poly trace(dim);
    for (const auto& [m, c] : d.terms())
      if (m.exps.back() == 0) trace.add_term(m, c);
    if (!trace.is_zero()) return false;
    d = d.partial_derivative(dim - 1);
  }
  return true;
}

}  // namespace degen
