#ifndef DEGEN_OPERATOR_PARAMS_HPP
#define DEGEN_OPERATOR_PARAMS_HPP

#include <iostream>

#include "degen/errors.hpp"
#include "degen/rational.hpp"

namespace degen {

/// Parameter triple (n, a, p) of the weighted operator, with the derived
/// quantities used throughout: D = n+2a, the critical exponent and tau.
/// Constraints: n >= 1, p >= 1, 2p < n+2a, and a >= 1 unless explicitly
/// overridden (formulas stay valid down to a > 1/2, with a warning).
struct OperatorParams {
  int n = 1;
  Rational a = 1;
  int p = 1;

  static OperatorParams make(int n, const Rational& a, int p,
                             bool allow_small_a = false) {
    if (n < 1) throw InvalidParams("OperatorParams: n must be >= 1");
    if (p < 1) throw InvalidParams("OperatorParams: p must be >= 1");
    if (a <= Rational(1, 2))
      throw InvalidParams("OperatorParams: a must be > 1/2");
    if (a < 1) {
      if (!allow_small_a)
        throw InvalidParams("OperatorParams: a must be >= 1 (use the small-a "
                            "override to allow 1/2 < a < 1)");
      std::cerr << "warning: a = " << to_string(a)
                << " is below 1; operator identities are used outside their "
                   "default range\n";
    }
    if (Rational(2 * p) >= Rational(n) + 2 * a)
      throw InvalidParams("OperatorParams: need 2p < n + 2a");
    return OperatorParams{n, a, p};
  }

  /// Effective dimension D = n + 2a.
  Rational dimension() const { return Rational(n) + 2 * a; }

  /// (D + 2p) / (D - 2p)
  Rational alpha_critical() const {
    return (dimension() + 2 * p) / (dimension() - 2 * p);
  }

  /// tau(alpha) = (D + 2p) - alpha (D - 2p); zero at the critical exponent.
  Rational tau(const Rational& alpha) const {
    return (dimension() + 2 * p) - alpha * (dimension() - 2 * p);
  }

  /// s = (D - 2p)/2, the decay rate of the bubble profile.
  Rational bubble_decay() const { return (dimension() - 2 * p) / 2; }

  int ambient_dim() const { return n + 1; }

  bool operator==(const OperatorParams& o) const = default;
};

}  // namespace degen

#endif
