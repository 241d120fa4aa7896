#ifndef DEGEN_POLY_HPP
#define DEGEN_POLY_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "degen/rational.hpp"

namespace degen {

/// Exponent vector of a single monomial. Its length is the ambient
/// dimension n+1; the last entry is the distinguished coordinate x_{n+1}.
struct Monomial {
  std::vector<unsigned> exps;

  Monomial() = default;
  explicit Monomial(std::vector<unsigned> e) : exps(std::move(e)) {}
  static Monomial unit(std::size_t dim) {
    return Monomial(std::vector<unsigned>(dim, 0));
  }

  std::size_t dim() const { return exps.size(); }
  unsigned degree() const;
  bool operator==(const Monomial& o) const { return exps == o.exps; }
};

/// Graded lexicographic order: compare total degree first, then exponent
/// vectors lexicographically.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Exact multivariate polynomial over Rational, in a runtime number of
/// variables. Terms are stored in graded-lex order with no zero
/// coefficients, so equal polynomials have identical representations.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  explicit Poly(int dim = 1);

  static Poly zero(int dim) { return Poly(dim); }
  static Poly constant(const Rational& c, int dim);
  static Poly variable(int axis, int dim);
  static Poly monomial(Monomial m, const Rational& coeff);
  /// x_1^2 + ... + x_dim^2
  static Poly norm_sq(int dim);

  int dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;

  /// Degree of the zero polynomial is -1.
  int degree() const;
  int min_degree() const;
  bool is_homogeneous() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Rational& c, Poly p);
  bool operator==(const Poly& o) const = default;

  Poly pow(unsigned k) const;

  Poly partial_derivative(int axis) const;

  /// Splits into homogeneous parts, keyed by degree; zero parts absent.
  std::map<int, Poly> homogeneous_components() const;
  Poly homogeneous_component(int deg) const;

  /// True iff every monomial has an even exponent on the last coordinate.
  bool is_even_in_last() const;
  /// True iff every monomial has an odd exponent on the last coordinate.
  bool is_odd_in_last() const;

  /// Exact quotient this/divisor, or nullopt if the division leaves a
  /// remainder.
  std::optional<Poly> divide_exact(const Poly& divisor) const;

  double evaluate(std::span<const double> point) const;
  Rational evaluate_exact(std::span<const Rational> point) const;

  /// Positive rational c such that this/c has coprime integer
  /// coefficients. Zero polynomial has content 0.
  Rational content() const;
  /// Coefficient of the graded-lex leading monomial (0 for the zero poly).
  Rational leading_coefficient() const;

  /// Total order on polynomials of equal dimension, used for canonical
  /// sorting of power-factor bases.
  static int compare(const Poly& a, const Poly& b);

  std::string to_string() const;

  void add_term(const Monomial& m, const Rational& c);

 private:
  int dim_;
  TermMap terms_;
};

}  // namespace degen

#endif
