#ifndef DEGEN_TESTS_RADIAL_ORACLE_HPP
#define DEGEN_TESTS_RADIAL_ORACLE_HPP

#include <cmath>
#include <map>

#include "degen/rational.hpp"

// Independent 1-D oracle for radial functions. On radial profiles the
// weighted operator reduces to the ODE form f'' + (D-1)/rho f' with the
// effective dimension D = n + 2a. Profiles are finite sums
//   f(rho) = sum_j coeff[j] * (t2 + rho^2)^{-(s+j)}
// which the reduction maps into itself:
//   L (t2+rho^2)^{-sigma} = [4 sigma (sigma+1) - 2 sigma D] (t2+rho^2)^{-sigma-1}
//                           - 4 sigma (sigma+1) t2 (t2+rho^2)^{-sigma-2}.
// Everything stays rational, and the code path shares nothing with the
// multivariate algebra it cross-checks.
namespace oracle {

struct RadialProfile {
  degen::Rational s;   // base decay exponent
  degen::Rational t2;  // t^2
  std::map<long, degen::Rational> coeff;
};

inline RadialProfile neg_weighted_laplacian(const RadialProfile& f,
                                            const degen::Rational& D) {
  RadialProfile out{f.s, f.t2, {}};
  auto add = [&out](long j, const degen::Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = out.coeff.emplace(j, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.coeff.erase(it);
    }
  };
  for (const auto& [j, c] : f.coeff) {
    const degen::Rational sigma = f.s + j;
    const degen::Rational quad = 4 * sigma * (sigma + 1);
    add(j + 1, -c * (quad - 2 * sigma * D));
    add(j + 2, c * quad * f.t2);
  }
  return out;
}

inline RadialProfile apply_power(RadialProfile f, const degen::Rational& D,
                                 int p) {
  for (int i = 0; i < p; ++i) f = neg_weighted_laplacian(f, D);
  return f;
}

/// K with (-L)^p (t2+rho^2)^{-s} = K t^{2p} (t2+rho^2)^{-s-2p}, for the
/// critical decay s = (D-2p)/2; K does not depend on t. Returns false if
/// other powers survive.
inline bool bubble_constant(const degen::Rational& D, int p,
                            const degen::Rational& t2, degen::Rational& K) {
  RadialProfile f{(D - 2 * p) / 2, t2, {{0, degen::Rational(1)}}};
  const RadialProfile image = apply_power(f, D, p);
  if (image.coeff.size() != 1) return false;
  const auto& [j, c] = *image.coeff.begin();
  if (j != 2 * p) return false;
  K = c / degen::pow_rational(t2, p);
  return true;
}

inline double evaluate(const RadialProfile& f, double rho) {
  double acc = 0.0;
  const double base = degen::to_double(f.t2) + rho * rho;
  for (const auto& [j, c] : f.coeff)
    acc += degen::to_double(c) *
           std::pow(base, -degen::to_double(f.s + j));
  return acc;
}

}  // namespace oracle

#endif
