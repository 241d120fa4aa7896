#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "degen/suite.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "degen-calc: exact symbolic and numeric verification suites for the "
      "weighted degenerate Laplacian and its powers"};
  app.fallthrough();

  degen::SuiteConfig config;
  std::string a_str = "1";
  std::string alpha_str;
  std::string t_str = "1";
  double tol = 0.0;

  app.add_option("--n", config.n, "spatial dimension n >= 1");
  app.add_option("--a", a_str,
                 "weight parameter a as a rational string, e.g. 1 or 3/2");
  app.add_option("--p", config.p, "operator power p >= 1 with 2p < n+2a");
  auto* alpha_opt =
      app.add_option("--alpha", alpha_str,
                     "nonlinearity exponent as a rational string (> 1)");
  app.add_option("--t", t_str, "bubble concentration parameter (rational)");
  app.add_option("--qdeg", config.qdeg, "quadrature degree parameter");
  app.add_option("--seed", config.seed, "seed of the counter-based sampler");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance override");
  app.add_option("--kmax", config.kmax, "number of growth-recursion levels");
  app.add_option("--r0", config.r0, "starting radius of the growth trace");
  app.add_option("--samples", config.samples, "sample-point count");
  app.add_option("--poly", config.poly_path, "polynomial JSON input file");
  app.add_option("--out", config.out_path, "write the report to this file");
  app.add_flag("--allow-small-a", config.allow_small_a,
               "accept 1/2 < a < 1 with a warning");

  app.add_subcommand("decompose",
                     "decompose an even polynomial into weighted-harmonic parts");
  app.add_subcommand("kelvin-check",
                     "Kelvin involution, fixed point and product identities");
  app.add_subcommand("bubble",
                     "extract the bubble constant and certify the PDE");
  app.add_subcommand("divergence",
                     "punctured-ball divergence identity checks");
  app.add_subcommand("average-law",
                     "weighted average law for singular profiles");
  app.add_subcommand("growth", "growth recursions and the blow-up trace");
  app.add_subcommand("integrate", "weighted sphere moments and omega_a");
  app.add_subcommand("scan-positivity",
                     "positivity of operator iterates on samples");
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (const auto a = degen::parse_rational(a_str)) {
    config.a = *a;
  } else {
    std::cerr << "error: --a expects a rational string such as 3/2\n";
    return 2;
  }
  if (!alpha_str.empty() || alpha_opt->count() > 0) {
    if (const auto alpha = degen::parse_rational(alpha_str)) {
      config.alpha = *alpha;
    } else {
      std::cerr << "error: --alpha expects a rational string such as 5/3\n";
      return 2;
    }
  }
  if (const auto t = degen::parse_rational(t_str)) {
    config.t = *t;
  } else {
    std::cerr << "error: --t expects a rational string\n";
    return 2;
  }
  if (tol_opt->count() > 0) config.tol = tol;
  config.command = app.get_subcommands().front()->get_name();

  const degen::SuiteResult result = degen::run_suite(config);
  const std::string text = result.report.dump(2) + "\n";
  if (config.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.out_path);
    if (!out) {
      std::cerr << "error: cannot write '" << config.out_path << "'\n";
      return 2;
    }
    out << text;
  }
  if (result.exit_code != 0 && result.report.contains("error"))
    std::cerr << "error: " << result.report["error"].get<std::string>() << "\n";
  return result.exit_code;
}
