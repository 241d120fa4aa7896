#ifndef DEGEN_ERRORS_HPP
#define DEGEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace degen {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AxisOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Exact division by the last coordinate (or another polynomial) left a
/// nonzero remainder.
struct NotDivisible : std::domain_error {
  using std::domain_error::domain_error;
};

/// A power factor was evaluated where its base is <= 0 and the exponent is
/// not a non-negative integer.
struct SingularEvaluation : std::domain_error {
  using std::domain_error::domain_error;
};

struct SingularSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHomogeneous : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OddParity : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The extracted remainder polynomial of a bubble certificate has positive
/// degree.
struct NonconstantRemainder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The inversion-chain recursion was pushed past the level where its
/// constant vanishes.
struct DegenerateLevel : std::domain_error {
  using std::domain_error::domain_error;
};

struct PoorFit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergentLimit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PremiseViolated : std::runtime_error {
  int level;
  double radius;
  PremiseViolated(const std::string& msg, int k, double r)
      : std::runtime_error(msg), level(k), radius(r) {}
};

}  // namespace degen

#endif
