#include "degen/almansi.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "degen/errors.hpp"
#include "degen/weighted_operator.hpp"

namespace degen {

namespace {

void enumerate_even(int dim, int axis, int remaining, Monomial& current,
                    std::vector<Monomial>& out) {
  if (axis == dim - 1) {
    if (remaining % 2 == 0) {
      current.exps[axis] = static_cast<unsigned>(remaining);
      out.push_back(current);
    }
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current.exps[axis] = static_cast<unsigned>(e);
    enumerate_even(dim, axis + 1, remaining - e, current, out);
  }
  current.exps[axis] = 0;
}

using Matrix = std::vector<std::vector<Rational>>;

/// Exact Gaussian elimination; returns false when the system is singular.
bool solve_linear(Matrix a, std::vector<Rational> rhs,
                  std::vector<Rational>& out) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(a[pivot], a[col]);
    std::swap(rhs[pivot], rhs[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    rhs[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      rhs[row] -= f * rhs[col];
    }
  }
  out = std::move(rhs);
  return true;
}

/// Basis of the null space of a (rows x cols) matrix, via reduced row
/// echelon form; one vector per free column, deterministic.
std::vector<std::vector<Rational>> kernel_basis(Matrix a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    const Rational inv = Rational(1) / a[rank][col];
    for (std::size_t j = col; j < cols; ++j) a[rank][j] *= inv;
    for (std::size_t row = 0; row < rows; ++row) {
      if (row == rank || a[row][col] == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t j = col; j < cols; ++j) a[row][j] -= f * a[rank][j];
    }
    pivot_of_col[col] = static_cast<long>(rank);
    ++rank;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t col = 0; col < cols; ++col) {
      const long r = pivot_of_col[col];
      if (r >= 0) v[col] = -a[static_cast<std::size_t>(r)][free_col];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Poly from_coords(const std::vector<Rational>& coords,
                 const std::vector<Monomial>& basis, int dim) {
  Poly p(dim);
  for (std::size_t i = 0; i < basis.size(); ++i)
    p.add_term(basis[i], coords[i]);
  return p;
}

std::vector<Rational> to_coords(const Poly& p,
                                const std::vector<Monomial>& basis) {
  std::map<Monomial, std::size_t, GrlexLess> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  std::vector<Rational> coords(basis.size(), Rational(0));
  for (const auto& [m, c] : p.terms()) {
    auto it = index.find(m);
    if (it == index.end())
      throw SingularSystem("to_coords: polynomial leaves the ambient space");
    coords[it->second] = c;
  }
  return coords;
}

/// Clears denominators and the sign so basis elements print stably.
Poly make_primitive(const Poly& p) {
  const Rational c = p.content();
  if (c == 0) return p;
  Poly q = (Rational(1) / c) * p;
  if (q.leading_coefficient() < 0) q = -q;
  return q;
}

}  // namespace

std::vector<Monomial> even_monomials_of_degree(int degree, int dim) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial current = Monomial::unit(dim);
  enumerate_even(dim, 0, degree, current, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return GrlexLess{}(a, b);
  });
  return out;
}

std::vector<Monomial> even_monomials_up_to(int max_degree, int dim) {
  std::vector<Monomial> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto layer = even_monomials_of_degree(d, dim);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

long even_homogeneous_dimension(int degree, int dim) {
  return static_cast<long>(even_monomials_of_degree(degree, dim).size());
}

Poly solve_T(const Poly& p, const OperatorParams& params) {
  const int dim = p.dim();
  if (dim != params.ambient_dim())
    throw DimensionMismatch("solve_T: polynomial/parameter dimension mismatch");
  if (!p.is_even_in_last())
    throw OddParity("solve_T: input must be even in the last coordinate");

  const Poly image = apply_weighted_laplacian(p, params);
  if (image.is_zero()) return Poly::zero(dim);

  const int m = p.degree();
  const auto w_basis = even_monomials_up_to(m - 2, dim);
  const Poly one_minus = Poly::constant(Rational(1), dim) - Poly::norm_sq(dim);

  Matrix t_matrix(w_basis.size(),
                  std::vector<Rational>(w_basis.size(), Rational(0)));
  for (std::size_t j = 0; j < w_basis.size(); ++j) {
    const Poly tq = apply_weighted_laplacian(
        one_minus * Poly::monomial(w_basis[j], Rational(1)), params);
    const auto col = to_coords(tq, w_basis);
    for (std::size_t i = 0; i < w_basis.size(); ++i) t_matrix[i][j] = col[i];
  }

  std::vector<Rational> rhs = to_coords(-image, w_basis);
  std::vector<Rational> solution;
  if (!solve_linear(std::move(t_matrix), std::move(rhs), solution))
    throw SingularSystem("solve_T: operator matrix is singular");
  return from_coords(solution, w_basis, dim);
}

bool is_weighted_harmonic(const Poly& p, const OperatorParams& params) {
  if (!p.is_even_in_last())
    throw OddParity("is_weighted_harmonic: input must be even in x_last");
  return apply_weighted_laplacian(p, params).is_zero();
}

Poly HomogeneousDecomposition::reconstruct(int dim) const {
  Poly sum(dim);
  const Poly r2 = Poly::norm_sq(dim);
  for (const auto& [i, part] : parts)
    sum += r2.pow(static_cast<unsigned>(i)) * part;
  return sum;
}

HomogeneousDecomposition almansi_decompose(const Poly& p,
                                           const OperatorParams& params) {
  if (!p.is_homogeneous())
    throw NotHomogeneous("almansi_decompose: input must be homogeneous");
  if (!p.is_even_in_last())
    throw OddParity("almansi_decompose: input must be even in x_last");

  HomogeneousDecomposition dec;
  dec.degree = std::max(p.degree(), 0);
  Poly current = p;
  int shift = 0;
  while (!current.is_zero()) {
    const int m = current.degree();
    const Poly q = solve_T(current, params);
    // (1-|x|^2) q + current is harmonic; its degree-m part is the next
    // weighted-harmonic component.
    const Poly h =
        (Poly::constant(Rational(1), p.dim()) - Poly::norm_sq(p.dim())) * q +
        current;
    const Poly part = h.homogeneous_component(m);
    if (!part.is_zero()) dec.parts.emplace_back(shift, part);
    current = q.homogeneous_component(m - 2);
    ++shift;
  }
  return dec;
}

const HarmonicBasis& harmonic_basis(int degree, const OperatorParams& params) {
  using Key = std::tuple<int, int, Rational>;
  struct KeyLess {
    bool operator()(const Key& a, const Key& b) const {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
      if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
      return cmp(std::get<2>(a), std::get<2>(b)) < 0;
    }
  };
  static std::mutex cache_mutex;
  static std::map<Key, std::unique_ptr<HarmonicBasis>, KeyLess> cache;

  const Key key{degree, params.n, params.a};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }

  const int dim = params.ambient_dim();
  const auto domain = even_monomials_of_degree(degree, dim);
  const auto image_basis = even_monomials_of_degree(degree - 2, dim);

  Matrix a(image_basis.size(), std::vector<Rational>(domain.size(), Rational(0)));
  for (std::size_t j = 0; j < domain.size(); ++j) {
    const Poly img = apply_weighted_laplacian(
        Poly::monomial(domain[j], Rational(1)), params);
    const auto col = to_coords(img, image_basis);
    for (std::size_t i = 0; i < image_basis.size(); ++i) a[i][j] = col[i];
  }

  auto result = std::make_unique<HarmonicBasis>();
  result->degree = degree;
  result->params = params;
  for (const auto& v : kernel_basis(std::move(a), domain.size()))
    result->elements.push_back(make_primitive(from_coords(v, domain, dim)));

  std::lock_guard<std::mutex> lock(cache_mutex);
  auto [it, inserted] = cache.emplace(key, std::move(result));
  return *it->second;
}

}  // namespace degen
