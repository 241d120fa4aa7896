#ifndef DEGEN_ALMANSI_HPP
#define DEGEN_ALMANSI_HPP

#include <utility>
#include <vector>

#include "degen/operator_params.hpp"
#include "degen/poly.hpp"

namespace degen {

/// Monomials of the given ambient dimension that are even in the last
/// coordinate, listed in graded-lex order.
std::vector<Monomial> even_monomials_of_degree(int degree, int dim);
std::vector<Monomial> even_monomials_up_to(int max_degree, int dim);

/// dim of the space of even homogeneous polynomials of the given degree.
long even_homogeneous_dimension(int degree, int dim);

/// Solves T(q) = -Ã p over the space W of even polynomials of degree
/// <= deg(p) - 2, where T(q) = Ã((1-|x|^2) q). The returned q makes
/// (1-|x|^2) q + p weighted-harmonic; unique since T is a bijection of W.
Poly solve_T(const Poly& p, const OperatorParams& params);

bool is_weighted_harmonic(const Poly& p, const OperatorParams& params);

/// p = sum_i |x|^{2i} part(i) with every part weighted-harmonic of degree
/// deg(p) - 2i. Zero parts are dropped.
struct HomogeneousDecomposition {
  int degree = 0;
  std::vector<std::pair<int, Poly>> parts;

  Poly reconstruct(int dim) const;
};

HomogeneousDecomposition almansi_decompose(const Poly& p,
                                           const OperatorParams& params);

/// Exact rational basis of the weighted-harmonic polynomials of one
/// homogeneous degree.
struct HarmonicBasis {
  int degree = 0;
  OperatorParams params;
  std::vector<Poly> elements;
};

/// Cached per (degree, n, a); the cache is guarded for concurrent readers.
const HarmonicBasis& harmonic_basis(int degree, const OperatorParams& params);

}  // namespace degen

#endif
