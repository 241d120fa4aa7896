#ifndef DEGEN_RADIAL_EXPR_HPP
#define DEGEN_RADIAL_EXPR_HPP

#include <span>
#include <vector>

#include "degen/poly.hpp"

namespace degen {

/// One factor B(x)^gamma with a polynomial base. Bases are even in the
/// last coordinate, nonzero, and of degree <= 4 — the class of bases
/// closed under the inversion x -> x/|x|^2.
struct PowerFactor {
  Poly base;
  Rational exponent;

  PowerFactor(Poly b, Rational e);
};

/// One summand Q(x) * prod_j B_j(x)^{gamma_j}.
struct RadialTerm {
  Poly coeff;
  std::vector<PowerFactor> factors;
};

/// Finite sum of radial terms, closed under differentiation and under the
/// weighted Laplacian. Values are kept in a canonical normal form:
///   - factors of a term are sorted and have pairwise distinct bases;
///   - bases are primitive (rational content pulled into the coefficient
///     whenever its power is exactly rational);
///   - non-negative integer powers are expanded into the coefficient, and
///     no remaining factor base divides the coefficient;
///   - terms whose exponents differ by integers over the same bases form
///     one gauge class and are merged over the minimal exponents, so a
///     function has a single spelling up to base proportionality with
///     irrational scale (the documented false-negative case).
/// Equality of normal forms is the algebra's (syntactic) zero test.
class RadialPowerExpr {
 public:
  static RadialPowerExpr zero(int dim);
  static RadialPowerExpr from_poly(Poly p);
  /// B^gamma as a one-term expression.
  static RadialPowerExpr power(Poly base, const Rational& exponent);
  static RadialPowerExpr make_term(Poly coeff, std::vector<PowerFactor> fs);

  int dim() const { return dim_; }
  const std::vector<RadialTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  /// True when no term carries power factors.
  bool is_polynomial() const;
  Poly as_polynomial() const;
  bool is_even_in_last() const;

  RadialPowerExpr operator-() const;
  friend RadialPowerExpr operator+(const RadialPowerExpr& a,
                                   const RadialPowerExpr& b);
  friend RadialPowerExpr operator-(const RadialPowerExpr& a,
                                   const RadialPowerExpr& b);
  friend RadialPowerExpr operator*(const Rational& c, const RadialPowerExpr& e);
  friend RadialPowerExpr operator*(const Poly& p, const RadialPowerExpr& e);
  friend RadialPowerExpr operator*(const RadialPowerExpr& a,
                                   const RadialPowerExpr& b);
  bool operator==(const RadialPowerExpr& o) const;

  /// Exact formal partial derivative along an axis (0-based).
  RadialPowerExpr differentiate(int axis) const;

  /// Exact division by x_{n+1}; throws NotDivisible unless every term's
  /// coefficient is divisible (bases are even, so they never obstruct).
  RadialPowerExpr divide_by_last_coordinate() const;

  double evaluate(std::span<const double> point) const;

  std::string to_string() const;

 private:
  explicit RadialPowerExpr(int dim) : dim_(dim) {}
  void canonicalize();

  int dim_;
  std::vector<RadialTerm> terms_;
};

/// Canonical form of e; constructors and operators already normalize, so
/// this is the identity on well-formed values.
RadialPowerExpr normalize(const RadialPowerExpr& e);

}  // namespace degen

#endif
