#ifndef DEGEN_KELVIN_HPP
#define DEGEN_KELVIN_HPP

#include <span>
#include <vector>

#include "degen/operator_params.hpp"
#include "degen/quadrature.hpp"
#include "degen/radial_expr.hpp"

namespace degen {

/// Inversion data of a base polynomial: B(x/|x|^2) = transformed(x) |x|^{-2 weight},
/// with all |x|^2 factors stripped from the transformed polynomial.
struct KelvinBase {
  Poly transformed;
  int weight = 0;
};
KelvinBase kelvin_base(const Poly& base);

/// Pure substitution e(x/|x|^2), represented inside the algebra.
RadialPowerExpr kelvin_substitute(const RadialPowerExpr& e);

/// |x|^{2p-n-2a} e(x/|x|^2). An involution on the algebra.
RadialPowerExpr kelvin_transform(const RadialPowerExpr& e,
                                 const OperatorParams& params);

struct PdeCheckReport {
  std::size_t samples = 0;
  double max_rel_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// For u with (-A~)^p u = u^alpha, the Kelvin image satisfies
/// (-A~)^p u* = |x|^{-tau} (u*)^alpha; reports the worst relative residual
/// of that equation over the samples. `scale` multiplies u (the algebra
/// stores the unscaled profile; bubble normalizations are irrational).
PdeCheckReport kelvin_pde_check(const RadialPowerExpr& u,
                                const Rational& alpha,
                                const OperatorParams& params,
                                const std::vector<std::vector<double>>& samples,
                                double scale = 1.0, double tol = 1e-9);

/// A_{m,t} = prod_{j<m} [(t-2j)(t-2j+D-2) - k(k+D-2)]
Rational product_A(int m, const Rational& t, int k,
                   const OperatorParams& params);
/// B_{m,t} = prod_{j<m} [(2m-D-t-2j)(2m-t-2j-2) - k(k+D-2)]; equals A_{m,t}.
Rational product_B(int m, const Rational& t, int k,
                   const OperatorParams& params);

/// Levels (c_i, f_i) with (-A~)^i (Kelvin u) = c_i |x|^{-(D-2p+2i)} f_i(x/|x|^2),
/// f_i(0) = u(0). The recursion constant vanishes at level p, where the
/// chain stops.
struct InversionChain {
  std::vector<Rational> constants;
  std::vector<RadialPowerExpr> profiles;
};
InversionChain inversion_chain(const RadialPowerExpr& u,
                               const OperatorParams& params, int levels = -1);

/// Symbolic form of chain level i, for comparison against the operator
/// applied to the Kelvin image.
RadialPowerExpr inversion_chain_level_expr(const InversionChain& chain, int i,
                                           const OperatorParams& params);

/// Far-field expansion e(x) ~ |x|^{-l} (a0 + sum_i a_i x_i/|x|^2) fitted
/// over sample spheres; the remainder order is estimated from a log-log
/// slope and must reach l+2 (within 0.5), else PoorFit.
struct AsymptoticExpansion {
  Rational order;
  double a0 = 0.0;
  std::vector<double> a;
  double residual_order_estimate = 0.0;
};
AsymptoticExpansion asymptotic_fit(const RadialPowerExpr& e, const Rational& l,
                                   std::span<const double> radii,
                                   const WeightedQuadratureGrid& grid);

}  // namespace degen

#endif
