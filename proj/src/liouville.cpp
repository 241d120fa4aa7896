#include "degen/liouville.hpp"

#include <algorithm>
#include <cmath>

#include "degen/errors.hpp"
#include "degen/parallel.hpp"
#include "degen/rng.hpp"
#include "degen/weighted_operator.hpp"

namespace degen {

double BubbleSolution::scale() const {
  return c0 * std::pow(to_double(t), to_double(params.bubble_decay()));
}

double BubbleSolution::evaluate_even(std::span<const double> X) const {
  return scale() * profile.evaluate(X);
}

double BubbleSolution::evaluate_halfspace(std::span<const double> x,
                                          double y) const {
  double denom = to_double(t) * to_double(t) + 4.0 * y;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - to_double(x0[i]);
    denom += d * d;
  }
  return c0 * std::pow(to_double(t) / denom, to_double(params.bubble_decay()));
}

std::pair<Rational, double> verify_bubble_constant(const OperatorParams& params,
                                                   const Rational& t,
                                                   std::uint64_t seed,
                                                   std::size_t samples,
                                                   double tol) {
  if (t <= 0) throw InvalidParams("verify_bubble_constant: need t > 0");
  const int dim = params.ambient_dim();
  const Rational s = params.bubble_decay();
  const Poly base = Poly::constant(t * t, dim) + Poly::norm_sq(dim);
  const RadialPowerExpr profile = RadialPowerExpr::power(base, -s);

  const RadialPowerExpr image = apply_power(profile, params, params.p);
  const RadialPowerExpr remainder =
      image * RadialPowerExpr::power(base, s + 2 * params.p);
  if (!remainder.is_polynomial())
    throw NonconstantRemainder(
        "verify_bubble_constant: image is not a pure power of the base");
  const Poly rem_poly = remainder.as_polynomial();
  if (!rem_poly.is_constant())
    throw NonconstantRemainder(
        "verify_bubble_constant: remainder polynomial has positive degree");

  // image = K t^{2p} base^{-s-2p}
  const Rational K = rem_poly.constant_term() / pow_rational(t, 2 * params.p);
  const double c0 = std::pow(
      to_double(K), to_double((params.dimension() - 2 * params.p) /
                              Rational(4 * params.p)));

  // Pointwise cross-check of (-A~)^p u = u^alpha for the scaled bubble.
  const double alpha = to_double(params.alpha_critical());
  const double scale = c0 * std::pow(to_double(t), to_double(s));
  CounterRng rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto x = rng.point_in_ball(dim, 3.0);
    const double lhs = scale * image.evaluate(x);
    const double rhs = std::pow(scale * profile.evaluate(x), alpha);
    worst = std::max(worst,
                     std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
  }
  if (worst > tol)
    throw SingularSystem(
        "verify_bubble_constant: PDE cross-check residual above tolerance");
  return {K, c0};
}

BubbleSolution make_bubble(const Rational& t, std::vector<Rational> x0,
                           const OperatorParams& params) {
  if (t <= 0) throw InvalidParams("make_bubble: need t > 0");
  if (static_cast<int>(x0.size()) != params.n)
    throw InvalidParams("make_bubble: x0 must have n entries");

  const int dim = params.ambient_dim();
  Poly base = Poly::constant(t * t, dim);
  for (int i = 0; i < params.n; ++i) {
    const Poly shifted = Poly::variable(i, dim) - Poly::constant(x0[i], dim);
    base += shifted * shifted;
  }
  const Poly last = Poly::variable(dim - 1, dim);
  base += last * last;

  auto [K, c0] = verify_bubble_constant(params, t);
  BubbleSolution bubble{t,
                        std::move(x0),
                        params,
                        K,
                        c0,
                        RadialPowerExpr::power(base, -params.bubble_decay())};
  return bubble;
}

GrowthTrace growth_sequences(const OperatorParams& params, const Rational& alpha,
                             double r0, int k_max) {
  if (alpha <= 1) throw InvalidParams("growth_sequences: need alpha > 1");
  if (k_max < 0 || k_max > 64)
    throw InvalidParams("growth_sequences: need 0 <= k_max <= 64");

  GrowthTrace trace;
  trace.p = params.p;
  trace.alpha = alpha;
  trace.k_max = k_max;
  trace.A_const = 2 * alpha * (params.p - 1) + params.dimension() + 2 * params.p;

  const Rational two_p(2 * params.p);
  trace.sigma.push_back(Rational(2 * (params.p - 1)));
  trace.b.push_back(Rational(0));
  trace.r.push_back(r0);
  for (int k = 0; k < k_max; ++k) {
    trace.sigma.push_back(alpha * trace.sigma.back() + two_p);
    trace.b.push_back(alpha * trace.b.back() + two_p * (k + 1));
    const double step =
        2.0 * params.p / (to_double(alpha * trace.sigma[k]) + 1.0);
    trace.r.push_back(std::pow(2.0, step) * trace.r.back());
  }

  // closed forms: sigma_k = 2(p-1)a^k + 2p(a^k-1)/(a-1),
  //               b_k = 2p( a(a^k-1)/(a-1)^2 - k/(a-1) )
  trace.closed_form_match = true;
  Rational alpha_pow(1);
  for (int k = 0; k <= k_max; ++k) {
    const Rational am1 = alpha - 1;
    const Rational sigma_closed =
        Rational(2 * (params.p - 1)) * alpha_pow + two_p * (alpha_pow - 1) / am1;
    const Rational b_closed =
        two_p * (alpha * (alpha_pow - 1) / (am1 * am1) - Rational(k) / am1);
    if (sigma_closed != trace.sigma[k] || b_closed != trace.b[k])
      trace.closed_form_match = false;
    alpha_pow *= alpha;
  }

  // r_k / r_0 = 2^{sum_{j<k} 2p/(alpha sigma_j + 1)}; the sum converges by
  // the ratio test, so the bound constant is a finite partial sum plus a
  // geometric tail estimate.
  double exponent_sum = 0.0;
  Rational sigma = trace.sigma[0];
  double term = 0.0;
  for (int j = 0; j < 512; ++j) {
    term = 2.0 * params.p / (to_double(alpha * sigma) + 1.0);
    exponent_sum += term;
    if (term < 1e-16) break;
    sigma = alpha * sigma + two_p;
  }
  exponent_sum += term * (1.0 / (to_double(alpha) - 1.0));
  trace.bound_c = std::pow(2.0, exponent_sum);

  trace.r_monotone = true;
  trace.r_bounded = true;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0 && trace.r[k] < trace.r[k - 1]) trace.r_monotone = false;
    if (trace.r[k] > trace.bound_c * r0 * (1.0 + 1e-12)) trace.r_bounded = false;
  }
  return trace;
}

namespace {

bool sampled_radial(const RadialPowerExpr& f, int dim) {
  CounterRng rng(11);
  for (int trial = 0; trial < 24; ++trial) {
    const auto x = rng.point_in_ball(dim, 2.0);
    double ref = 0.0;
    ref = f.evaluate(x);
    auto perm = x;
    // random transposition plus sign flips preserve |x|
    const int i = static_cast<int>(rng.next_long(0, dim - 1));
    const int j = static_cast<int>(rng.next_long(0, dim - 1));
    std::swap(perm[i], perm[j]);
    for (auto& v : perm)
      if (rng.next_double() < 0.5) v = -v;
    const double val = f.evaluate(perm);
    if (std::abs(val - ref) > 1e-9 * (1.0 + std::abs(ref))) return false;
  }
  return true;
}

}  // namespace

MonotonicityReport radial_monotonicity_check(const RadialPowerExpr& f,
                                             const OperatorParams& params,
                                             std::span<const double> radii) {
  const int dim = f.dim();
  MonotonicityReport report;
  report.radial_ok = sampled_radial(f, dim);
  if (!report.radial_ok)
    throw InvalidParams("radial_monotonicity_check: input is not radial");

  // generic direction with a nonzero last coordinate
  std::vector<double> dir(dim, 1.0 / std::sqrt(static_cast<double>(dim)));

  std::vector<RadialPowerExpr> powers;
  powers.push_back(f);
  for (int k = 1; k <= params.p; ++k)
    powers.push_back(-apply_weighted_laplacian(powers.back(), params));

  std::vector<double> point(dim);
  for (double r : radii) {
    for (int i = 0; i < dim; ++i) point[i] = r * dir[i];
    const double scale = 1.0 + std::abs(powers[0].evaluate(point));
    for (int k = 0; k <= params.p; ++k) {
      const double v = powers[k].evaluate(point);
      if (v < -1e-10 * scale)
        throw PremiseViolated("radial_monotonicity_check: (-A~)^k f < 0", k, r);
    }
  }

  // g = r u' + (D-2p) u, written as x.grad f + (D-2p) f; its radial
  // derivative is the directional derivative along x/|x|.
  RadialPowerExpr g = (params.dimension() - 2 * params.p) * f;
  for (int j = 0; j < dim; ++j)
    g = g + Poly::variable(j, dim) * f.differentiate(j);
  std::vector<RadialPowerExpr> grad_g;
  for (int j = 0; j < dim; ++j) grad_g.push_back(g.differentiate(j));

  report.max_derivative = -1e300;
  report.min_derivative = 1e300;
  for (double r : radii) {
    for (int i = 0; i < dim; ++i) point[i] = r * dir[i];
    double deriv = 0.0;
    for (int j = 0; j < dim; ++j) deriv += dir[j] * grad_g[j].evaluate(point);
    if (deriv > report.max_derivative) {
      report.max_derivative = deriv;
      report.worst_radius = r;
    }
    report.min_derivative = std::min(report.min_derivative, deriv);
  }
  report.min_neg_derivative = -report.max_derivative;
  report.strictly_negative = report.max_derivative < 0.0;
  report.boundary_case = std::abs(report.max_derivative) <= 1e-14;
  return report;
}

PositivityReport positivity_scan(const RadialPowerExpr& u,
                                 const OperatorParams& params,
                                 const std::vector<std::vector<double>>& samples,
                                 double scale) {
  if (scale <= 0) throw InvalidParams("positivity_scan: scale must be > 0");
  PositivityReport report;

  std::vector<RadialPowerExpr> powers;
  powers.push_back(u);
  for (int i = 1; i <= params.p - 1; ++i)
    powers.push_back(-apply_weighted_laplacian(powers.back(), params));

  const std::size_t count = samples.size();
  std::vector<double> u_vals(count, 0.0);
  std::vector<std::vector<double>> level_vals(powers.size() - 1,
                                              std::vector<double>(count, 0.0));
  parallel_chunks(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      u_vals[idx] = scale * powers[0].evaluate(samples[idx]);
      for (std::size_t lvl = 1; lvl < powers.size(); ++lvl)
        level_vals[lvl - 1][idx] = scale * powers[lvl].evaluate(samples[idx]);
    }
  });

  report.u_positive = true;
  for (std::size_t idx = 0; idx < count; ++idx)
    if (u_vals[idx] <= 0.0) report.u_positive = false;

  for (std::size_t lvl = 1; lvl < powers.size(); ++lvl) {
    double min_v = count == 0 ? 0.0 : level_vals[lvl - 1][0];
    for (std::size_t idx = 0; idx < count; ++idx) {
      const double v = level_vals[lvl - 1][idx];
      min_v = std::min(min_v, v);
      if (v <= 0.0)
        report.violations.push_back(
            {static_cast<int>(lvl), idx, v});
    }
    report.min_value.push_back(min_v);
  }
  report.pass = report.u_positive && report.violations.empty();
  return report;
}

}  // namespace degen
