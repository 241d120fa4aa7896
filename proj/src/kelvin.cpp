#include "degen/kelvin.hpp"

#include <algorithm>
#include <cmath>

#include "degen/errors.hpp"
#include "degen/weighted_operator.hpp"

namespace degen {

KelvinBase kelvin_base(const Poly& base) {
  if (base.is_zero()) throw InvalidParams("kelvin_base: zero base");
  const int dim = base.dim();
  const int d = base.degree();
  const Poly r2 = Poly::norm_sq(dim);

  // sum_k B_k |x|^{2(d-k)} over homogeneous parts, then strip |x|^2.
  Poly lifted(dim);
  for (const auto& [k, part] : base.homogeneous_components())
    lifted += r2.pow(static_cast<unsigned>(d - k)) * part;

  int stripped = 0;
  for (;;) {
    auto q = lifted.divide_exact(r2);
    if (!q) break;
    lifted = std::move(*q);
    ++stripped;
  }
  return KelvinBase{std::move(lifted), d - stripped};
}

namespace {

RadialPowerExpr kelvin_with_prefactor(const RadialPowerExpr& e,
                                      const Rational& radial_exponent) {
  const int dim = e.dim();
  const Poly r2 = Poly::norm_sq(dim);
  RadialPowerExpr out = RadialPowerExpr::zero(dim);
  for (const auto& t : e.terms()) {
    const int deg_q = t.coeff.degree();
    Poly coeff(dim);
    for (const auto& [k, part] : t.coeff.homogeneous_components())
      coeff += r2.pow(static_cast<unsigned>(deg_q - k)) * part;

    Rational r2_exponent = radial_exponent - deg_q;
    std::vector<PowerFactor> factors;
    for (const auto& f : t.factors) {
      const KelvinBase kb = kelvin_base(f.base);
      r2_exponent -= f.exponent * kb.weight;
      factors.emplace_back(kb.transformed, f.exponent);
    }
    if (r2_exponent != 0) factors.emplace_back(r2, r2_exponent);
    out = out + RadialPowerExpr::make_term(std::move(coeff), std::move(factors));
  }
  return out;
}

}  // namespace

RadialPowerExpr kelvin_substitute(const RadialPowerExpr& e) {
  return kelvin_with_prefactor(e, Rational(0));
}

RadialPowerExpr kelvin_transform(const RadialPowerExpr& e,
                                 const OperatorParams& params) {
  // |x|^{2p - n - 2a} = (|x|^2)^{p - D/2}
  return kelvin_with_prefactor(e, Rational(params.p) - params.dimension() / 2);
}

PdeCheckReport kelvin_pde_check(const RadialPowerExpr& u,
                                const Rational& alpha,
                                const OperatorParams& params,
                                const std::vector<std::vector<double>>& samples,
                                double scale, double tol) {
  const RadialPowerExpr image = kelvin_transform(u, params);
  const RadialPowerExpr lhs = apply_power(image, params, params.p);
  const double tau = to_double(params.tau(alpha));
  const double alpha_d = to_double(alpha);

  PdeCheckReport report;
  report.samples = samples.size();
  report.tolerance = tol;
  for (const auto& x : samples) {
    double norm2 = 0.0;
    for (double v : x) norm2 += v * v;
    const double lhs_val = scale * lhs.evaluate(x);
    const double u_star = scale * image.evaluate(x);
    const double rhs_val = std::pow(norm2, -0.5 * tau) * std::pow(u_star, alpha_d);
    if (!std::isfinite(rhs_val))
      throw SingularEvaluation("kelvin_pde_check: sample hit a singular point");
    const double rel =
        std::abs(lhs_val - rhs_val) / std::max(std::abs(rhs_val), 1e-300);
    report.max_rel_residual = std::max(report.max_rel_residual, rel);
  }
  report.pass = report.max_rel_residual <= tol;
  return report;
}

Rational product_A(int m, const Rational& t, int k,
                   const OperatorParams& params) {
  if (m < 1) throw InvalidParams("product_A: need m >= 1");
  const Rational shift = params.dimension() - 2;
  const Rational angular = Rational(k) * (Rational(k) + shift);
  Rational prod(1);
  for (int j = 0; j < m; ++j) {
    const Rational tj = t - 2 * j;
    prod *= tj * (tj + shift) - angular;
  }
  return prod;
}

Rational product_B(int m, const Rational& t, int k,
                   const OperatorParams& params) {
  if (m < 1) throw InvalidParams("product_B: need m >= 1");
  const Rational D = params.dimension();
  const Rational angular = Rational(k) * (Rational(k) + D - 2);
  Rational prod(1);
  for (int j = 0; j < m; ++j) {
    prod *= (Rational(2 * m) - D - t - 2 * j) * (Rational(2 * m) - t - 2 * j - 2) -
            angular;
  }
  return prod;
}

InversionChain inversion_chain(const RadialPowerExpr& u,
                               const OperatorParams& params, int levels) {
  if (!u.is_polynomial())
    throw InvalidParams("inversion_chain: u must be smooth at 0 "
                        "(polynomial terms only)");
  if (!u.is_even_in_last())
    throw OddParity("inversion_chain: u must be even in x_last");
  if (levels < 0) levels = params.p;

  const int dim = u.dim();
  const Poly r2 = Poly::norm_sq(dim);
  const Rational u_at_zero = u.as_polynomial().constant_term();

  InversionChain chain;
  chain.constants.push_back(Rational(1));
  chain.profiles.push_back(u);

  for (int i = 0; i + 1 < levels; ++i) {
    const Rational denom =
        Rational(2 * params.p - 2 * i - 2) *
        (params.dimension() - 2 * params.p + 2 * i);
    if (denom == 0)
      throw DegenerateLevel(
          "inversion_chain: recursion constant vanishes at level p");
    const RadialPowerExpr& f = chain.profiles.back();

    RadialPowerExpr euler = RadialPowerExpr::zero(dim);
    for (int j = 0; j < dim; ++j)
      euler = euler + Poly::variable(j, dim) * f.differentiate(j);

    const RadialPowerExpr step =
        Rational(4 * (params.p - i - 1)) * euler -
        r2 * apply_weighted_laplacian(f, params);
    const RadialPowerExpr next = f + (Rational(1) / denom) * step;

    if (next.as_polynomial().constant_term() != u_at_zero)
      throw SingularSystem("inversion_chain: f_{i+1}(0) != u(0)");
    chain.constants.push_back(denom * chain.constants.back());
    chain.profiles.push_back(next);
  }
  return chain;
}

RadialPowerExpr inversion_chain_level_expr(const InversionChain& chain, int i,
                                           const OperatorParams& params) {
  const auto& f = chain.profiles.at(static_cast<std::size_t>(i));
  const Poly r2 = Poly::norm_sq(f.dim());
  // c_i |x|^{-(D-2p+2i)} f_i(x/|x|^2)
  const Rational expo = -(params.dimension() - 2 * params.p + 2 * i) / 2;
  return chain.constants.at(static_cast<std::size_t>(i)) *
         (RadialPowerExpr::power(r2, expo) * kelvin_substitute(f));
}

AsymptoticExpansion asymptotic_fit(const RadialPowerExpr& e, const Rational& l,
                                   std::span<const double> radii,
                                   const WeightedQuadratureGrid& grid) {
  if (radii.size() < 4)
    throw InvalidParams("asymptotic_fit: need at least 4 radii");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] < 10.0)
      throw InvalidParams("asymptotic_fit: radii must sit in the far field (>= 10)");
    if (k > 0 && radii[k] <= radii[k - 1])
      throw InvalidParams("asymptotic_fit: radii must increase");
  }

  const int dim = e.dim();
  const double l_d = to_double(l);
  const double omega = grid.weighted_measure();

  std::vector<double> second_moment(dim);
  for (int j = 0; j < dim; ++j)
    second_moment[j] = grid.integrate_sphere(
        [j](std::span<const double> xi) { return xi[j] * xi[j]; });

  // Per-radius estimates a0(r) = a0 + O(r^-2), a_j(r) = a_j + O(r^-2).
  std::vector<double> a0_est(radii.size());
  std::vector<std::vector<double>> aj_est(radii.size());
  std::vector<double> scaled(dim);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double r = radii[k];
    a0_est[k] = weighted_average_z(e, r, grid) * std::pow(r, l_d) / omega;
    aj_est[k].resize(dim);
    for (int j = 0; j < dim; ++j) {
      const double moment = grid.integrate_sphere([&](std::span<const double> xi) {
        for (int i = 0; i < dim; ++i) scaled[i] = r * xi[i];
        return xi[j] * e.evaluate(scaled);
      });
      aj_est[k][j] = moment * std::pow(r, l_d + 1.0) / second_moment[j];
    }
  }

  // Least squares against [1, r^-2].
  auto fit_limit = [&](const std::function<double(std::size_t)>& value) {
    double s00 = 0, s01 = 0, s11 = 0, b0 = 0, b1 = 0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double g = 1.0 / (radii[k] * radii[k]);
      s00 += 1.0;
      s01 += g;
      s11 += g * g;
      b0 += value(k);
      b1 += value(k) * g;
    }
    const double det = s00 * s11 - s01 * s01;
    return (s11 * b0 - s01 * b1) / det;
  };

  AsymptoticExpansion fit;
  fit.order = l;
  fit.a0 = fit_limit([&](std::size_t k) { return a0_est[k]; });
  fit.a.resize(dim);
  for (int j = 0; j < dim; ++j)
    fit.a[j] = fit_limit([&](std::size_t k) { return aj_est[k][j]; });

  // Remainder against the fitted model, worst node per sphere.
  std::vector<double> rem(radii.size());
  double model_scale = std::abs(fit.a0);
  for (double aj : fit.a) model_scale = std::max(model_scale, std::abs(aj));
  bool machine_exact = true;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double r = radii[k];
    const double ref = std::pow(r, -l_d) * (model_scale + 1e-300);
    // weighted mean absolute deviation on the sphere of radius r
    const double worst = grid.integrate_sphere([&](std::span<const double> xi) {
      for (int i = 0; i < dim; ++i) scaled[i] = r * xi[i];
      double model = fit.a0;
      for (int j = 0; j < dim; ++j) model += fit.a[j] * xi[j] / r;
      model *= std::pow(r, -l_d);
      return std::abs(e.evaluate(scaled) - model);
    }) / omega;
    rem[k] = worst;
    machine_exact = machine_exact && worst <= 1e-12 * ref;
  }

  if (machine_exact) {
    fit.residual_order_estimate = l_d + 100.0;  // exact within rounding
    return fit;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double x = std::log(radii[k]);
    const double y = std::log(std::max(rem[k], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double count = static_cast<double>(radii.size());
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  fit.residual_order_estimate = -slope;
  if (fit.residual_order_estimate < l_d + 2.0 - 0.5)
    throw PoorFit("asymptotic_fit: remainder decays slower than order l+2");
  return fit;
}

}  // namespace degen
