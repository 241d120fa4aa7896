#ifndef DEGEN_SUITE_HPP
#define DEGEN_SUITE_HPP

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "degen/poly.hpp"
#include "degen/rational.hpp"

namespace degen {

/// Parsed command-line configuration for one verification suite run.
struct SuiteConfig {
  std::string command;
  int n = 1;
  Rational a = Rational(1);
  int p = 1;
  std::optional<Rational> alpha;
  Rational t = Rational(1);
  int qdeg = 12;
  int kmax = 10;
  std::uint64_t seed = 2024;
  std::optional<double> tol;
  double r0 = 1.0;
  int samples = 1000;
  bool allow_small_a = false;
  std::string poly_path;
  std::string out_path;
};

struct SuiteResult {
  int exit_code = 0;  // 0 pass, 1 check failure, 2 config error
  nlohmann::ordered_json report;
};

/// Runs one named suite (decompose, kelvin-check, bubble, divergence,
/// average-law, growth, integrate, scan-positivity) and returns the
/// machine-readable report. Identical configs produce byte-identical
/// reports apart from the timestamp field.
SuiteResult run_suite(const SuiteConfig& config);

Poly parse_poly_file(const std::string& path);

}  // namespace degen

#endif
