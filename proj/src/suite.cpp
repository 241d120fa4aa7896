#include "degen/suite.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "degen/almansi.hpp"
#include "degen/errors.hpp"
#include "degen/kelvin.hpp"
#include "degen/liouville.hpp"
#include "degen/operator_params.hpp"
#include "degen/poly_io.hpp"
#include "degen/quadrature.hpp"
#include "degen/rng.hpp"
#include "degen/sampling.hpp"
#include "degen/weighted_operator.hpp"

namespace degen {

namespace {

using Json = nlohmann::ordered_json;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&tt, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

Json check_entry(const std::string& name, bool pass) {
  Json j;
  j["name"] = name;
  j["pass"] = pass;
  return j;
}

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

std::vector<std::vector<double>> sample_points(CounterRng& rng, int dim,
                                               std::size_t count,
                                               double radius) {
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    pts.push_back(rng.point_in_ball(dim, radius));
  return pts;
}

// ---------------------------------------------------------------- integrate

Json run_integrate(const SuiteConfig& config, const OperatorParams& params) {
  const auto grid = WeightedQuadratureGrid::build(params, config.qdeg);
  const double tol = config.tol.value_or(1e-12);
  Json checks = Json::array();

  const int max_m = std::min(config.qdeg - 1, 6);
  for (int m = 0; m <= max_m; ++m) {
    const double rule = grid.integrate_sphere([m](std::span<const double> xi) {
      return std::pow(xi.back() * xi.back(), m);
    });
    const double closed = WeightedQuadratureGrid::closed_form_moment(params, m);
    Json c = check_entry("moment-m" + std::to_string(m),
                         rel_err(rule, closed) <= tol);
    c["rule"] = rule;
    c["closed_form"] = closed;
    c["rel_error"] = rel_err(rule, closed);
    checks.push_back(std::move(c));
  }

  const double odd = grid.integrate_sphere(
      [](std::span<const double> xi) { return xi[0]; });
  Json c = check_entry("odd-integrand-vanishes", std::abs(odd) <= 1e-13);
  c["value"] = odd;
  checks.push_back(std::move(c));

  Json payload;
  payload["omega_a"] = grid.weighted_measure();
  payload["node_count"] = grid.node_count();
  payload["declared_degree"] = grid.declared_degree();
  payload["checks"] = std::move(checks);
  return payload;
}

// ---------------------------------------------------------------- decompose

Json run_decompose(const SuiteConfig& config, const OperatorParams& params) {
  if (config.poly_path.empty())
    throw InvalidParams("decompose: --poly <file> is required");
  const Poly input = parse_poly_file(config.poly_path);
  if (input.dim() != params.ambient_dim())
    throw InvalidParams("decompose: polynomial dimension must equal n+1");
  if (!input.is_even_in_last())
    throw InvalidParams(
        "decompose: polynomial must be even in the last variable");

  Json checks = Json::array();
  Json components = Json::array();
  for (const auto& [deg, comp] : input.homogeneous_components()) {
    const auto dec = almansi_decompose(comp, params);
    const bool round_trip = dec.reconstruct(input.dim()) == comp;
    bool parts_harmonic = true;
    Json parts = Json::array();
    for (const auto& [i, part] : dec.parts) {
      parts_harmonic = parts_harmonic && is_weighted_harmonic(part, params);
      Json pj;
      pj["radial_power"] = i;
      pj["harmonic_degree"] = deg - 2 * i;
      pj["poly"] = poly_to_json(part);
      parts.push_back(std::move(pj));
    }
    Json cj = check_entry("decompose-degree-" + std::to_string(deg),
                          round_trip && parts_harmonic);
    cj["round_trip_exact"] = round_trip;
    cj["parts_weighted_harmonic"] = parts_harmonic;
    checks.push_back(std::move(cj));

    Json comp_json;
    comp_json["degree"] = deg;
    comp_json["parts"] = std::move(parts);
    components.push_back(std::move(comp_json));
  }

  Json payload;
  payload["input"] = poly_to_json(input);
  payload["components"] = std::move(components);
  payload["checks"] = std::move(checks);
  return payload;
}

// -------------------------------------------------------------- kelvin-check

Json run_kelvin_check(const SuiteConfig& config, const OperatorParams& params) {
  const int dim = params.ambient_dim();
  CounterRng rng(config.seed);
  Json checks = Json::array();

  std::size_t involution_failures = 0;
  const std::size_t rounds = 100;
  for (std::size_t k = 0; k < rounds; ++k) {
    const RadialPowerExpr e = random_algebra_element(rng, dim);
    const RadialPowerExpr back =
        kelvin_transform(kelvin_transform(e, params), params);
    if (!(back == e)) ++involution_failures;
  }
  Json inv = check_entry("kelvin-involution", involution_failures == 0);
  inv["rounds"] = rounds;
  inv["failures"] = involution_failures;
  checks.push_back(std::move(inv));

  const Poly base =
      Poly::constant(Rational(1), dim) + Poly::norm_sq(dim);
  const RadialPowerExpr bubble_profile =
      RadialPowerExpr::power(base, -params.bubble_decay());
  const bool fixed =
      kelvin_transform(bubble_profile, params) == bubble_profile;
  checks.push_back(check_entry("bubble-kelvin-fixed-point", fixed));

  std::size_t product_failures = 0;
  for (std::size_t k = 0; k < rounds; ++k) {
    const int m = static_cast<int>(rng.next_long(1, 5));
    const int deg_k = static_cast<int>(rng.next_long(0, 6));
    const Rational t = random_rational(rng, 12, 4);
    if (product_A(m, t, deg_k, params) != product_B(m, t, deg_k, params))
      ++product_failures;
  }
  Json prod = check_entry("product-identity-A-equals-B", product_failures == 0);
  prod["rounds"] = rounds;
  prod["failures"] = product_failures;
  checks.push_back(std::move(prod));

  Json payload;
  payload["checks"] = std::move(checks);
  return payload;
}

// ------------------------------------------------------------------- bubble

Json run_bubble(const SuiteConfig& config, const OperatorParams& params) {
  const double tol = config.tol.value_or(1e-9);
  Json checks = Json::array();
  Json payload;

  Rational K(0);
  double c0 = 0.0;
  bool constant_ok = true;
  std::string failure;
  try {
    std::tie(K, c0) = verify_bubble_constant(params, config.t, config.seed,
                                             200, tol);
  } catch (const NonconstantRemainder& e) {
    constant_ok = false;
    failure = e.what();
  }
  Json cc = check_entry("remainder-degree-zero", constant_ok);
  if (!constant_ok) cc["error"] = failure;
  checks.push_back(std::move(cc));

  if (constant_ok) {
    payload["K"] = to_string(K);
    payload["c0"] = c0;
    payload["alpha_critical"] = to_string(params.alpha_critical());

    const int dim = params.ambient_dim();
    const Poly base =
        Poly::constant(config.t * config.t, dim) + Poly::norm_sq(dim);
    const RadialPowerExpr profile =
        RadialPowerExpr::power(base, -params.bubble_decay());
    const RadialPowerExpr image = apply_power(profile, params, params.p);
    const double scale =
        c0 * std::pow(to_double(config.t), to_double(params.bubble_decay()));
    const double alpha = to_double(params.alpha_critical());

    CounterRng rng(config.seed);
    double worst = 0.0;
    for (int i = 0; i < config.samples; ++i) {
      const auto x = rng.point_in_ball(dim, 3.0);
      const double lhs = scale * image.evaluate(x);
      const double rhs = std::pow(scale * profile.evaluate(x), alpha);
      worst = std::max(worst, rel_err(lhs, rhs));
    }
    Json pr = check_entry("pde-residual", worst <= tol);
    pr["max_rel_residual"] = worst;
    pr["samples"] = config.samples;
    pr["tolerance"] = tol;
    checks.push_back(std::move(pr));

    // K must not depend on the concentration parameter.
    auto [K2, c02] = verify_bubble_constant(params, config.t + 1, config.seed);
    Json sc = check_entry("scale-covariance", K2 == K);
    sc["K_shifted_t"] = to_string(K2);
    checks.push_back(std::move(sc));
  }

  payload["checks"] = std::move(checks);
  return payload;
}

// --------------------------------------------------------------- divergence

Json divergence_levels_json(const DivergenceReport& report) {
  Json levels = Json::array();
  for (const auto& lvl : report.levels) {
    Json j;
    j["level"] = lvl.level;
    j["boundary"] = lvl.boundary;
    j["interior"] = lvl.interior;
    j["residual"] = lvl.residual;
    j["beta_estimate"] = lvl.beta_estimate;
    j["pass"] = lvl.pass;
    levels.push_back(std::move(j));
  }
  return levels;
}

Json run_divergence(const SuiteConfig& config, const OperatorParams& params) {
  const auto grid = WeightedQuadratureGrid::build(params, config.qdeg);
  const int dim = params.ambient_dim();
  const auto shrink = shrink_sequence(0.25, 8);
  const double tol_poly = config.tol.value_or(1e-10);
  const double tol_smooth = 1e-8;
  Json checks = Json::array();

  const double omega_rel = rel_err(
      grid.weighted_measure(),
      WeightedQuadratureGrid::closed_form_moment(params, 0));
  Json om = check_entry("omega-closed-form", omega_rel <= 1e-12);
  om["rel_error"] = omega_rel;
  om["omega_a"] = grid.weighted_measure();
  checks.push_back(std::move(om));

  {
    const auto u = RadialPowerExpr::from_poly(
        Poly::constant(Rational(1), dim));
    DivergenceOptions opts;
    opts.tolerance = tol_poly;
    const auto rep = divergence_identity_check(u, params, grid, shrink, opts);
    Json c = check_entry("polynomial-constant", rep.pass);
    c["levels"] = divergence_levels_json(rep);
    checks.push_back(std::move(c));
  }
  {
    const auto u = RadialPowerExpr::from_poly(Poly::norm_sq(dim));
    DivergenceOptions opts;
    opts.tolerance = tol_poly;
    const auto rep = divergence_identity_check(u, params, grid, shrink, opts);
    Json c = check_entry("polynomial-norm-sq", rep.pass);
    c["levels"] = divergence_levels_json(rep);
    checks.push_back(std::move(c));
  }

  const Poly base = Poly::constant(Rational(1), dim) + Poly::norm_sq(dim);
  const auto bubble = RadialPowerExpr::power(base, -params.bubble_decay());
  {
    DivergenceOptions opts;
    opts.tolerance = tol_smooth;
    const auto rep = divergence_identity_check(bubble, params, grid, shrink, opts);
    Json c = check_entry("bubble-profile", rep.pass);
    c["levels"] = divergence_levels_json(rep);
    checks.push_back(std::move(c));
  }
  {
    // refinement order of the radial integration, from coarse rules
    DivergenceOptions coarse;
    coarse.tolerance = 1.0;
    coarse.radial_nodes = 2;
    coarse.panel_refine = 1;
    coarse.richardson_stability = 1e9;
    const auto rep1 =
        divergence_identity_check(bubble, params, grid, shrink, coarse);
    coarse.panel_refine = 2;
    const auto rep2 =
        divergence_identity_check(bubble, params, grid, shrink, coarse);
    const double r1 = std::abs(rep1.levels[0].residual);
    const double r2 = std::abs(rep2.levels[0].residual);
    const double slope = (r1 > 1e-13 && r2 > 0) ? std::log2(r1 / r2) : 99.0;
    Json c = check_entry("refinement-slope", slope >= 2.0);
    c["residual_coarse"] = r1;
    c["residual_refined"] = r2;
    c["slope"] = slope;
    checks.push_back(std::move(c));
  }

  Json payload;
  payload["checks"] = std::move(checks);
  return payload;
}

// -------------------------------------------------------------- average-law

Json run_average_law(const SuiteConfig& config, const OperatorParams& params) {
  const auto grid = WeightedQuadratureGrid::build(params, config.qdeg);
  const int dim = params.ambient_dim();
  const double tol = config.tol.value_or(1e-6);
  const auto radii = shrink_sequence(0.5, 14);
  const Poly r2 = Poly::norm_sq(dim);
  Json checks = Json::array();

  auto level_json = [](const AverageLawReport& rep) {
    Json j;
    j["fitted_constant"] = rep.fitted_constant;
    j["beta_from_fit"] = rep.beta_from_fit;
    j["beta_from_definition"] = rep.beta_from_definition;
    j["agreement"] = rep.agreement;
    return j;
  };

  {
    // fundamental-exponent profile |x|^{2-D}
    const auto u =
        RadialPowerExpr::power(r2, (Rational(2) - params.dimension()) / 2);
    const auto rep = average_law_check(u, 0, params, radii, grid, tol);
    Json c = check_entry("fundamental-level0", rep.pass);
    c.update(level_json(rep));
    const double expected =
        -(to_double(params.dimension()) - 2.0) * grid.weighted_measure();
    c["expected_beta"] = expected;
    const double vs = rel_err(rep.beta_from_definition, expected);
    c["beta_vs_closed_form"] = vs;
    c["pass"] = c["pass"].get<bool>() && vs <= tol;
    checks.push_back(std::move(c));
  }

  {
    const auto u =
        RadialPowerExpr::power(r2, (Rational(4) - params.dimension()) / 2);
    const auto rep0 = average_law_check(u, 0, params, radii, grid, tol);
    Json c0 = check_entry("subfundamental-level0", rep0.pass);
    c0.update(level_json(rep0));
    checks.push_back(std::move(c0));

    if (params.p >= 2) {
      const auto rep1 = average_law_check(u, 1, params, radii, grid, tol);
      Json c1 = check_entry("subfundamental-level1", rep1.pass);
      c1.update(level_json(rep1));
      checks.push_back(std::move(c1));
    }
  }

  Json payload;
  payload["omega_a"] = grid.weighted_measure();
  payload["checks"] = std::move(checks);
  return payload;
}

// ------------------------------------------------------------------- growth

Json run_growth(const SuiteConfig& config, const OperatorParams& params) {
  const Rational alpha = config.alpha.value_or(params.alpha_critical());
  const auto trace = growth_sequences(params, alpha, config.r0, config.kmax);
  Json checks = Json::array();

  checks.push_back(
      check_entry("closed-form-matches-recursion", trace.closed_form_match));
  Json rm = check_entry("radii-monotone", trace.r_monotone);
  checks.push_back(std::move(rm));
  Json rb = check_entry("radii-bounded", trace.r_bounded);
  rb["bound_c"] = trace.bound_c;
  checks.push_back(std::move(rb));

  Json payload;
  payload["alpha"] = to_string(alpha);
  payload["A"] = to_string(trace.A_const);
  Json sigma = Json::array(), b = Json::array(), r = Json::array();
  for (const auto& s : trace.sigma) sigma.push_back(to_string(s));
  for (const auto& v : trace.b) b.push_back(to_string(v));
  for (const auto& v : trace.r) r.push_back(v);
  payload["sigma"] = std::move(sigma);
  payload["b"] = std::move(b);
  payload["r"] = std::move(r);

  // Blow-up demonstration (informational): the lower bound for z_0 grows
  // without bound along k; reported in log10.
  {
    const double a_d = to_double(alpha);
    const double log_A = std::log10(to_double(trace.A_const));
    const double demo_c0 = 2.0;
    const double rbar = std::max(
        2.0 * std::pow(to_double(trace.A_const),
                       2.0 * params.p * a_d / ((a_d - 1.0) * (a_d - 1.0))) /
            demo_c0,
        trace.bound_c * config.r0);
    Json demo = Json::array();
    double alpha_pow = a_d;
    for (int k = 0; k <= config.kmax; ++k) {
      alpha_pow *= a_d;  // alpha^{k+1}
      const double log_bound = alpha_pow * std::log10(demo_c0) +
                               to_double(trace.sigma[k]) * std::log10(rbar) -
                               to_double(trace.b[k]) * log_A;
      Json e;
      e["k"] = k;
      e["log10_lower_bound"] = log_bound;
      demo.push_back(std::move(e));
    }
    payload["blow_up_demo"] = std::move(demo);
  }

  payload["checks"] = std::move(checks);
  return payload;
}

// ---------------------------------------------------------- scan-positivity

Json run_scan_positivity(const SuiteConfig& config,
                         const OperatorParams& params) {
  const int dim = params.ambient_dim();
  Json checks = Json::array();

  const auto bubble = make_bubble(config.t, std::vector<Rational>(params.n, 0),
                                  params);
  CounterRng rng(config.seed);
  const auto samples =
      sample_points(rng, dim, static_cast<std::size_t>(config.samples), 50.0);
  const auto report =
      positivity_scan(bubble.profile, params, samples, bubble.scale());
  Json ps = check_entry("bubble-iterates-positive", report.pass);
  ps["levels"] = params.p - 1;
  ps["samples"] = samples.size();
  ps["violations"] = report.violations.size();
  Json mins = Json::array();
  for (double v : report.min_value) mins.push_back(v);
  ps["min_values"] = std::move(mins);
  checks.push_back(std::move(ps));

  {
    // far field of the Kelvin image of 1 + x_1: every level positive
    const Poly u_poly = Poly::constant(Rational(1), dim) +
                        Poly::variable(0, dim);
    const auto u_star =
        kelvin_transform(RadialPowerExpr::from_poly(u_poly), params);
    bool far_positive = true;
    double far_min = 1e300;
    RadialPowerExpr level = u_star;
    for (int i = 0; i < params.p; ++i) {
      for (int trial = 0; trial < 64; ++trial) {
        auto x = rng.point_in_ball(dim, 1.0);
        double norm = 0.0;
        for (double v : x) norm += v * v;
        norm = std::sqrt(norm);
        for (auto& v : x) v *= 1000.0 / norm;
        const double val = level.evaluate(x);
        far_min = std::min(far_min, val);
        if (val <= 0.0) far_positive = false;
      }
      level = -apply_weighted_laplacian(level, params);
    }
    Json ff = check_entry("kelvin-far-field-positive", far_positive);
    ff["min_value"] = far_min;
    ff["radius"] = 1000.0;
    checks.push_back(std::move(ff));
  }

  Json payload;
  payload["checks"] = std::move(checks);
  return payload;
}

}  // namespace

Poly parse_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidParams("parse_poly_file: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParams("parse_poly_file: malformed JSON: " +
                        std::string(e.what()));
  }
  try {
    return poly_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw InvalidParams(e.what());
  }
}

SuiteResult run_suite(const SuiteConfig& config) {
  SuiteResult result;
  Json& report = result.report;
  report["schema_version"] = 1;
  report["command"] = config.command;

  Json params_json;
  params_json["n"] = config.n;
  params_json["a"] = to_string(config.a);
  params_json["p"] = config.p;
  if (config.alpha) params_json["alpha"] = to_string(*config.alpha);
  params_json["t"] = to_string(config.t);
  params_json["qdeg"] = config.qdeg;
  params_json["kmax"] = config.kmax;
  params_json["seed"] = config.seed;
  params_json["samples"] = config.samples;
  if (config.tol) params_json["tol"] = *config.tol;
  report["params"] = std::move(params_json);

  try {
    const OperatorParams params =
        OperatorParams::make(config.n, config.a, config.p,
                             config.allow_small_a);
    if (config.alpha && *config.alpha <= 1)
      throw InvalidParams("alpha must be > 1");

    Json payload;
    if (config.command == "integrate") {
      payload = run_integrate(config, params);
    } else if (config.command == "decompose") {
      payload = run_decompose(config, params);
    } else if (config.command == "kelvin-check") {
      payload = run_kelvin_check(config, params);
    } else if (config.command == "bubble") {
      payload = run_bubble(config, params);
    } else if (config.command == "divergence") {
      payload = run_divergence(config, params);
    } else if (config.command == "average-law") {
      payload = run_average_law(config, params);
    } else if (config.command == "growth") {
      payload = run_growth(config, params);
    } else if (config.command == "scan-positivity") {
      payload = run_scan_positivity(config, params);
    } else {
      throw InvalidParams("unknown command '" + config.command + "'");
    }

    bool all_pass = true;
    for (const auto& c : payload["checks"])
      all_pass = all_pass && c.at("pass").get<bool>();
    report.update(payload);
    report["pass"] = all_pass;
    result.exit_code = all_pass ? 0 : 1;
  } catch (const InvalidParams& e) {
    report["error"] = e.what();
    report["pass"] = false;
    result.exit_code = 2;
  } catch (const std::exception& e) {
    report["error"] = e.what();
    report["pass"] = false;
    result.exit_code = 1;
  }

  report["timestamp"] = iso_timestamp();
  return result;
}

}  // namespace degen
