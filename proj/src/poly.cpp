#include "degen/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "degen/errors.hpp"

namespace degen {

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (unsigned e : exps) d += e;
  return d;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exps < b.exps;
}

Poly::Poly(int dim) : dim_(dim) {
  if (dim < 1) throw DimensionMismatch("Poly: dimension must be >= 1");
}

Poly Poly::constant(const Rational& c, int dim) {
  Poly p(dim);
  p.add_term(Monomial::unit(dim), c);
  return p;
}

Poly Poly::variable(int axis, int dim) {
  if (axis < 0 || axis >= dim)
    throw AxisOutOfRange("Poly::variable: axis out of range");
  Monomial m = Monomial::unit(dim);
  m.exps[axis] = 1;
  return monomial(m, Rational(1));
}

Poly Poly::monomial(Monomial m, const Rational& coeff) {
  Poly p(static_cast<int>(m.dim()));
  p.add_term(m, coeff);
  return p;
}

Poly Poly::norm_sq(int dim) {
  Poly p(dim);
  for (int i = 0; i < dim; ++i) {
    Monomial m = Monomial::unit(dim);
    m.exps[i] = 2;
    p.add_term(m, Rational(1));
  }
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (static_cast<int>(m.dim()) != dim_)
    throw DimensionMismatch("Poly::add_term: monomial dimension mismatch");
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial::unit(dim_));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

int Poly::min_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

bool Poly::is_homogeneous() const {
  return terms_.empty() || degree() == min_degree();
}

Poly Poly::operator-() const {
  Poly r(dim_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (dim_ != o.dim_) throw DimensionMismatch("Poly: dimension mismatch in +");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (dim_ != o.dim_) throw DimensionMismatch("Poly: dimension mismatch in -");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.dim_ != b.dim_)
    throw DimensionMismatch("Poly: dimension mismatch in *");
  Poly r(a.dim_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

Poly operator*(const Rational& c, Poly p) {
  if (c == 0) return Poly::zero(p.dim_);
  for (auto& [m, coeff] : p.terms_) coeff *= c;
  return p;
}

Poly Poly::pow(unsigned k) const {
  Poly r = constant(Rational(1), dim_);
  Poly base = *this;
  while (k > 0) {
    if (k & 1u) r = r * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return r;
}

Poly Poly::partial_derivative(int axis) const {
  if (axis < 0 || axis >= dim_)
    throw AxisOutOfRange("Poly::partial_derivative: axis out of range");
  Poly r(dim_);
  for (const auto& [m, c] : terms_) {
    const unsigned e = m.exps[axis];
    if (e == 0) continue;
    Monomial d = m;
    d.exps[axis] = e - 1;
    r.add_term(d, c * Rational(static_cast<long>(e)));
  }
  return r;
}

std::map<int, Poly> Poly::homogeneous_components() const {
  std::map<int, Poly> parts;
  for (const auto& [m, c] : terms_) {
    const int d = static_cast<int>(m.degree());
    auto it = parts.find(d);
    if (it == parts.end()) it = parts.emplace(d, Poly(dim_)).first;
    it->second.add_term(m, c);
  }
  return parts;
}

Poly Poly::homogeneous_component(int deg) const {
  Poly r(dim_);
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.degree()) == deg) r.add_term(m, c);
  return r;
}

bool Poly::is_even_in_last() const {
  for (const auto& [m, c] : terms_)
    if (m.exps.back() % 2 != 0) return false;
  return true;
}

bool Poly::is_odd_in_last() const {
  for (const auto& [m, c] : terms_)
    if (m.exps.back() % 2 != 1) return false;
  return true;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (dim_ != divisor.dim_)
    throw DimensionMismatch("Poly::divide_exact: dimension mismatch");
  if (divisor.is_zero())
    throw NotDivisible("Poly::divide_exact: division by zero polynomial");
  Poly rem = *this;
  Poly quot(dim_);
  const auto& lead = *divisor.terms_.rbegin();
  while (!rem.terms_.empty()) {
    const auto& top = *rem.terms_.rbegin();
    Monomial q = top.first;
    for (std::size_t i = 0; i < q.exps.size(); ++i) {
      if (q.exps[i] < lead.first.exps[i]) return std::nullopt;
      q.exps[i] -= lead.first.exps[i];
    }
    const Rational qc = top.second / lead.second;
    quot.add_term(q, qc);
    rem -= Poly::monomial(q, qc) * divisor;
  }
  return quot;
}

double Poly::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim_)
    throw DimensionMismatch("Poly::evaluate: point dimension mismatch");
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      for (unsigned e = 0; e < m.exps[i]; ++e) t *= point[i];
    }
    acc += t;
  }
  return acc;
}

Rational Poly::evaluate_exact(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != dim_)
    throw DimensionMismatch("Poly::evaluate_exact: point dimension mismatch");
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i] > 0) t *= pow_rational(point[i], m.exps[i]);
    acc += t;
  }
  return acc;
}

Rational Poly::content() const {
  if (terms_.empty()) return Rational(0);
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

Rational Poly::leading_coefficient() const {
  if (terms_.empty()) return Rational(0);
  return terms_.rbegin()->second;
}

int Poly::compare(const Poly& a, const Poly& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_ ? -1 : 1;
  auto ia = a.terms_.rbegin(), ib = b.terms_.rbegin();
  GrlexLess less;
  for (; ia != a.terms_.rend() && ib != b.terms_.rend(); ++ia, ++ib) {
    if (less(ia->first, ib->first)) return -1;
    if (less(ib->first, ia->first)) return 1;
    const int c = cmp(ia->second, ib->second);
    if (c != 0) return c;
  }
  if (ia != a.terms_.rend()) return 1;
  if (ib != b.terms_.rend()) return -1;
  return 0;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) os << (c > 0 ? " + " : " - ");
    if (first && c < 0) os << "-";
    first = false;
    Rational ac = abs(c);
    const bool is_const_mon = m.degree() == 0;
    if (ac != 1 || is_const_mon) os << ac.get_str();
    bool printed = false;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (printed || ac != 1) os << "*";
      os << "x" << (i + 1);
      if (m.exps[i] > 1) os << "^" << m.exps[i];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace degen
