#ifndef DEGEN_QUADRATURE_HPP
#define DEGEN_QUADRATURE_HPP

#include <functional>
#include <span>
#include <vector>

#include "degen/operator_params.hpp"
#include "degen/radial_expr.hpp"

namespace degen {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule with q nodes on [0,1] for the weight u^b (1-u)^c, exact for
/// polynomial integrands of degree <= 2q-1. The three-term recurrence is
/// assembled from exact rational closed forms; only the eigenvalue step
/// runs in floating point.
Rule1D jacobi_rule_01(const Rational& c_one_minus_u, const Rational& b_u,
                      int q);

/// Gauss-Legendre with q nodes mapped to [lo, hi].
Rule1D legendre_rule(int q, double lo, double hi);

/// Unweighted surface rule on the sphere S^d in R^{d+1}, exact for
/// polynomials of degree <= target_degree, built as a recursive polar
/// product down to S^0.
struct SphereRule {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;
};
SphereRule sphere_rule(int d, int target_degree);

/// Nodes and weights for the measure |xi_{n+1}|^{2a-1} dS on the unit
/// sphere S^n. The polar direction carries the weight
/// |s|^{2a-1}(1-s^2)^{(n-2)/2}, handled by a one-sided Gauss rule in
/// u = s^2 mirrored over both signs of s.
class WeightedQuadratureGrid {
 public:
  static WeightedQuadratureGrid build(const OperatorParams& params, int q);

  const OperatorParams& params() const { return params_; }
  /// Certified polynomial exactness degree (2q-1; even degrees reach 4q-2).
  int declared_degree() const { return 2 * q_ - 1; }
  std::size_t node_count() const { return points_.size(); }

  /// integral of g against |xi_{n+1}|^{2a-1} dS over S^n
  double integrate_sphere(
      const std::function<double(std::span<const double>)>& g) const;

  /// omega_a, the weighted measure of the unit sphere, from the rule.
  double weighted_measure() const;

  /// Closed form of the m-th moment:
  ///   int_{S^n} |xi_{n+1}|^{2a-1+2m} dS = 2 pi^{n/2} G(a+m)/G(a+m+n/2).
  static double closed_form_moment(const OperatorParams& params, int m);

 private:
  OperatorParams params_;
  int q_ = 0;
  std::vector<std::vector<double>> points_;
  std::vector<double> weights_;
};

/// z(r) = r^{-(n+2a-1)} int_{|x|=r} |x_{n+1}|^{2a-1} e dS, evaluated as a
/// weighted spherical average of e(r xi).
double weighted_average_z(const RadialPowerExpr& e, double r,
                          const WeightedQuadratureGrid& grid);

/// One level of the punctured-ball divergence identity: the weighted
/// boundary flux of (-A~)^i u on the unit sphere plus the interior
/// integral of the next level over B_1 \ {0}.
struct DivergenceLevel {
  int level = 0;
  double boundary = 0.0;
  double interior = 0.0;
  double residual = 0.0;
  double beta_estimate = 0.0;
  bool pass = false;
};

struct DivergenceReport {
  std::vector<DivergenceLevel> levels;
  double tolerance = 0.0;
  bool interior_exact = false;  // polynomial inputs integrate exactly
  bool precondition_checked = false;  // L1 test ran (u singular at 0)
  bool precondition_ok = true;
  bool pass = false;
};

struct DivergenceOptions {
  double tolerance = 1e-10;
  int radial_nodes = 16;      // Gauss-Legendre nodes per dyadic panel
  int panel_refine = 4;       // subdivisions of each dyadic panel
  double richardson_stability = 1e-5;
  /// Exponent for the L1 precondition on singular inputs; the critical
  /// exponent when unset.
  std::optional<double> precheck_alpha;
};

DivergenceReport divergence_identity_check(const RadialPowerExpr& u,
                                           const OperatorParams& params,
                                           const WeightedQuadratureGrid& grid,
                                           std::span<const double> shrink,
                                           const DivergenceOptions& opts = {});

/// Decreasing dyadic sequence s0, s0/2, ..., used for interior limits.
std::vector<double> shrink_sequence(double s0, int levels);

struct AverageLawReport {
  int level = 0;
  double fitted_constant = 0.0;
  double beta_from_fit = 0.0;
  double beta_from_definition = 0.0;
  double agreement = 0.0;  // |fit - def| / (1 + |def|)
  bool pass = false;
};

/// Checks that r^{n-1} vbar_i(r) stabilizes to -(n+2a-2)^{-1} beta_i, with
/// beta_i assembled independently from its definition at r = 1.
AverageLawReport average_law_check(const RadialPowerExpr& u, int level,
                                   const OperatorParams& params,
                                   std::span<const double> radii,
                                   const WeightedQuadratureGrid& grid,
                                   double tol = 1e-6);

struct JensenReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool pass = false;
};

/// Weighted Jensen inequality on the sphere of radius rho:
///   int |x_{n+1}|^{2a-1} u^alpha dS >= rho^{n+2a-1} omega^{1-alpha} z(rho)^alpha
/// with omega the weighted measure of the unit sphere.
JensenReport jensen_weighted_check(const RadialPowerExpr& u, double alpha,
                                   double rho,
                                   const WeightedQuadratureGrid& grid);

enum class IntegrabilityVerdict { Integrable, Divergent, Inconclusive };

struct L1Report {
  IntegrabilityVerdict verdict = IntegrabilityVerdict::Inconclusive;
  double value = 0.0;             // integral estimate when integrable
  double growth_exponent = 0.0;   // power of 1/s when divergent
  std::vector<double> partials;   // integrals over B_1 \ B_{s_k}
};

/// Classifies int_{B_1} |x_{n+1}|^{2a-1} |x|^{-tau} e^alpha dx by watching
/// the punctured integrals over a dyadic shrink sequence.
L1Report l1_singularity_check(const RadialPowerExpr& e, double tau,
                              double alpha, const OperatorParams& params,
                              std::span<const double> shrink,
                              const WeightedQuadratureGrid& grid);

}  // namespace degen

#endif
