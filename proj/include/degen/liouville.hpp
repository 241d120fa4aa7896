#ifndef DEGEN_LIOUVILLE_HPP
#define DEGEN_LIOUVILLE_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "degen/operator_params.hpp"
#include "degen/radial_expr.hpp"

namespace degen {

/// The critical-exponent solution family
///   u(x,y) = c0 (t / (t^2 + 4y + |x-x0|^2))^s,  s = (D-2p)/2,
/// stored through its even form c0 t^s (t^2 + |X-(x0,0)|^2)^{-s}. The
/// algebra keeps the exact unscaled profile; c0 = K^{(D-2p)/(4p)} is
/// irrational in general and lives in floating point.
struct BubbleSolution {
  Rational t;
  std::vector<Rational> x0;
  OperatorParams params;
  Rational curvature_constant;  // exact K with (-A~)^p B^{-s} = K t^{2p} B^{-s-2p}
  double c0 = 0.0;
  RadialPowerExpr profile;  // (t^2 + |X-(x0,0)|^2)^{-s}, unscaled

  /// c0 * t^s, the factor multiplying the profile.
  double scale() const;
  double evaluate_even(std::span<const double> X) const;
  double evaluate_halfspace(std::span<const double> x, double y) const;
};

/// Applies (-A~)^p to (t^2+|X|^2)^{-s} symbolically and extracts the
/// constant K of the image K t^{2p} (t^2+|X|^2)^{-s-2p}; any remainder of
/// positive degree raises NonconstantRemainder. Returns (K, c0) and
/// cross-checks the scaled bubble against the PDE at random points.
std::pair<Rational, double> verify_bubble_constant(const OperatorParams& params,
                                                   const Rational& t = Rational(1),
                                                   std::uint64_t seed = 7,
                                                   std::size_t samples = 200,
                                                   double tol = 1e-9);

BubbleSolution make_bubble(const Rational& t, std::vector<Rational> x0,
                           const OperatorParams& params);

/// The blow-up bookkeeping sequences: sigma and b by recursion and by
/// closed form (compared exactly), radii ratios r_k, and the uniform
/// bound r_k <= c r_0.
struct GrowthTrace {
  int p = 1;
  Rational alpha;
  int k_max = 0;
  Rational A_const;
  std::vector<Rational> sigma;
  std::vector<Rational> b;
  std::vector<double> r;
  bool closed_form_match = false;
  double bound_c = 0.0;
  bool r_monotone = false;
  bool r_bounded = false;
};

GrowthTrace growth_sequences(const OperatorParams& params, const Rational& alpha,
                             double r0, int k_max);

/// Checks the radial-solution conclusion (r u' + (D-2p) u)' < 0 on a grid
/// of radii, after verifying the premises (-A~)^k f >= 0 for k = 0..p
/// (PremiseViolated reports the failing level and radius).
struct MonotonicityReport {
  bool radial_ok = false;
  double max_derivative = 0.0;      // max over grid of (r u' + (D-2p) u)'
  double min_derivative = 0.0;      // min over grid of the same quantity
  double min_neg_derivative = 0.0;  // min over grid of the negated quantity
  double worst_radius = 0.0;
  bool strictly_negative = false;
  bool boundary_case = false;  // derivative identically ~0 (e.g. constants)
};

MonotonicityReport radial_monotonicity_check(const RadialPowerExpr& f,
                                             const OperatorParams& params,
                                             std::span<const double> radii);

/// Evaluates (-A~)^i u for i = 1..p-1 at the samples and reports any
/// non-positive value.
struct PositivityViolation {
  int level = 0;
  std::size_t sample = 0;
  double value = 0.0;
};

struct PositivityReport {
  bool u_positive = false;
  std::vector<double> min_value;  // per level i = 1..p-1
  std::vector<PositivityViolation> violations;
  bool pass = false;
};

PositivityReport positivity_scan(const RadialPowerExpr& u,
                                 const OperatorParams& params,
                                 const std::vector<std::vector<double>>& samples,
                                 double scale = 1.0);

}  // namespace degen

#endif
