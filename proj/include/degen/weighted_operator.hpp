#ifndef DEGEN_WEIGHTED_OPERATOR_HPP
#define DEGEN_WEIGHTED_OPERATOR_HPP

#include "degen/operator_params.hpp"
#include "degen/poly.hpp"
#include "degen/radial_expr.hpp"

namespace degen {

/// The weighted Laplacian: sum of second derivatives over all n+1 axes
/// plus (2a-1)/x_{n+1} times the last partial. Inputs must be even in
/// x_{n+1}, which makes the division exact.
Poly apply_weighted_laplacian(const Poly& p, const OperatorParams& params);
RadialPowerExpr apply_weighted_laplacian(const RadialPowerExpr& e,
                                         const OperatorParams& params);

/// k-fold application of the negated weighted Laplacian.
Poly apply_power(const Poly& p, const OperatorParams& params, int k);
RadialPowerExpr apply_power(const RadialPowerExpr& e,
                            const OperatorParams& params, int k);

/// Scalar lambda with  Ã(|x|^{t-k} h) = lambda |x|^{t-2-k} h  for h a
/// weighted-harmonic homogeneous polynomial of degree k:
/// lambda = t(t+D-2) - k(k+D-2).
Rational eigen_factor(const Rational& t, int k, const OperatorParams& params);

/// Polynomial on the half space, in variables (x_1..x_n, y); y is last.
struct HalfSpacePoly {
  Poly poly;
};

/// y u_yy + a u_y + Delta_x u
HalfSpacePoly apply_A_halfspace(const HalfSpacePoly& u,
                                const OperatorParams& params);

/// The change of variables y = x_{n+1}^2 / 4: returns v(x, x_{n+1}) =
/// u(x, x_{n+1}^2/4), a polynomial even in x_{n+1}. Conjugates the
/// half-space operator into the weighted Laplacian.
Poly substitute_parabolic(const HalfSpacePoly& u);

/// True iff all odd x_{n+1}-derivatives of substitute_parabolic(u) up to
/// order 2k-1 vanish identically on {x_{n+1}=0}.
bool check_vanishing_odd_derivatives(const HalfSpacePoly& u, int order);

}  // namespace degen

#endif
