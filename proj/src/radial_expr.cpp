#include "degen/radial_expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "degen/errors.hpp"

namespace degen {

namespace {

int compare_factors(const std::vector<PowerFactor>& a,
                    const std::vector<PowerFactor>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = Poly::compare(a[i].base, b[i].base);
    if (c != 0) return c;
    const int e = cmp(a[i].exponent, b[i].exponent);
    if (e != 0) return e;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

Rational floor_rational(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return Rational(f);
}

/// Puts one term into its canonical shape: content-normalized distinct
/// bases, non-negative integer powers expanded away, and a coefficient
/// that no remaining factor base divides. Returns false when the term
/// vanished (zero coefficient).
bool canonicalize_term(RadialTerm& t) {
  if (t.coeff.is_zero()) return false;

  // Pull rational content out of each base when its power is rational.
  for (auto& f : t.factors) {
    const Rational c = f.base.content();
    if (c != 0 && c != 1) {
      if (auto scaled = exact_rational_pow(c, f.exponent)) {
        t.coeff = *scaled * t.coeff;
        f.base = (Rational(1) / c) * f.base;
      }
    }
    if (f.base.leading_coefficient() < 0 && is_integer(f.exponent)) {
      if (to_long(f.exponent) % 2 != 0) t.coeff = Rational(-1) * t.coeff;
      f.base = -f.base;
    }
  }

  // Merge factors with equal bases.
  std::sort(t.factors.begin(), t.factors.end(),
            [](const PowerFactor& x, const PowerFactor& y) {
              const int c = Poly::compare(x.base, y.base);
              if (c != 0) return c < 0;
              return cmp(x.exponent, y.exponent) < 0;
            });
  std::vector<PowerFactor> merged;
  for (auto& f : t.factors) {
    if (!merged.empty() && merged.back().base == f.base)
      merged.back().exponent += f.exponent;
    else
      merged.push_back(std::move(f));
  }

  std::vector<PowerFactor> kept;
  for (auto& f : merged) {
    // Constant bases fold into the coefficient when the power is rational.
    if (f.base.is_constant()) {
      if (auto v = exact_rational_pow(f.base.constant_term(), f.exponent)) {
        t.coeff = *v * t.coeff;
        continue;
      }
      kept.push_back(std::move(f));
      continue;
    }
    if (is_integer(f.exponent)) {
      if (f.exponent >= 0) {  // expand into the coefficient
        t.coeff = t.coeff * f.base.pow(static_cast<unsigned>(to_long(f.exponent)));
        continue;
      }
      while (f.exponent < 0) {
        auto q = t.coeff.divide_exact(f.base);
        if (!q) break;
        t.coeff = std::move(*q);
        f.exponent += 1;
      }
      if (f.exponent == 0) continue;
    } else {
      // Fractional powers: strip every base factor out of the coefficient;
      // the exponent is pinned modulo 1 by this term's gauge class.
      for (;;) {
        auto q = t.coeff.divide_exact(f.base);
        if (!q) break;
        t.coeff = std::move(*q);
        f.exponent += 1;
      }
    }
    kept.push_back(std::move(f));
  }
  t.factors = std::move(kept);
  return !t.coeff.is_zero();
}

Rational frac_part(const Rational& q) { return q - floor_rational(q); }

/// Terms whose factor exponents agree modulo 1 on identical bases span the
/// same gauge class: Q B^{g} and R B^{g+1} describe one function family.
/// The class signature lists the fractional residues.
std::vector<std::pair<const Poly*, Rational>> class_signature(
    const RadialTerm& t) {
  std::vector<std::pair<const Poly*, Rational>> sig;
  for (const auto& f : t.factors) {
    const Rational r = frac_part(f.exponent);
    if (r != 0) sig.emplace_back(&f.base, r);
  }
  return sig;
}

int compare_class(const RadialTerm& a, const RadialTerm& b) {
  const auto sa = class_signature(a);
  const auto sb = class_signature(b);
  const std::size_t n = std::min(sa.size(), sb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = Poly::compare(*sa[i].first, *sb[i].first);
    if (c != 0) return c;
    const int e = cmp(sa[i].second, sb[i].second);
    if (e != 0) return e;
  }
  if (sa.size() != sb.size()) return sa.size() < sb.size() ? -1 : 1;
  return 0;
}

/// Collapses one gauge class to a single term over the per-base minimal
/// exponents. Returns false when the class cancels to zero.
bool merge_class(std::vector<RadialTerm>& group, RadialTerm& out) {
  // Union of the bases in the class. Fractional-residue bases occur in
  // every member (that is what the class signature pins down); integer
  // ones may be absent, which counts as exponent 0.
  std::vector<PowerFactor> gauge;
  for (const auto& t : group)
    for (const auto& f : t.factors) {
      const bool seen =
          std::any_of(gauge.begin(), gauge.end(), [&](const PowerFactor& g) {
            return g.base == f.base;
          });
      if (!seen) gauge.emplace_back(f.base, f.exponent);
    }
  for (auto& g : gauge) {
    for (const auto& t : group) {
      Rational expo(0);
      for (const auto& f : t.factors)
        if (f.base == g.base) expo = f.exponent;
      if (cmp(expo, g.exponent) < 0) g.exponent = expo;
    }
  }
  std::sort(gauge.begin(), gauge.end(),
            [](const PowerFactor& x, const PowerFactor& y) {
              return Poly::compare(x.base, y.base) < 0;
            });

  const int dim = group.front().coeff.dim();
  Poly total(dim);
  for (const auto& t : group) {
    Poly lifted = t.coeff;
    for (const auto& g : gauge) {
      Rational expo(0);
      for (const auto& f : t.factors)
        if (f.base == g.base) expo = f.exponent;
      const Rational shift = expo - g.exponent;  // non-negative integer
      if (shift != 0)
        lifted = lifted * g.base.pow(static_cast<unsigned>(to_long(shift)));
    }
    total += lifted;
  }

  out.coeff = std::move(total);
  out.factors.clear();
  for (auto& g : gauge)
    if (g.exponent != 0) out.factors.push_back(std::move(g));
  return canonicalize_term(out);
}

}  // namespace

PowerFactor::PowerFactor(Poly b, Rational e)
    : base(std::move(b)), exponent(std::move(e)) {
  if (base.is_zero())
    throw InvalidParams("PowerFactor: base must be nonzero");
  if (!base.is_even_in_last())
    throw InvalidParams("PowerFactor: base must be even in the last coordinate");
  if (base.degree() > 4)
    throw InvalidParams("PowerFactor: base degree must be <= 4");
}

RadialPowerExpr RadialPowerExpr::zero(int dim) { return RadialPowerExpr(dim); }

RadialPowerExpr RadialPowerExpr::from_poly(Poly p) {
  RadialPowerExpr e(p.dim());
  if (!p.is_zero()) e.terms_.push_back(RadialTerm{std::move(p), {}});
  e.canonicalize();
  return e;
}

RadialPowerExpr RadialPowerExpr::power(Poly base, const Rational& exponent) {
  const int dim = base.dim();
  RadialPowerExpr e(dim);
  RadialTerm t{Poly::constant(Rational(1), dim), {}};
  t.factors.emplace_back(std::move(base), exponent);
  e.terms_.push_back(std::move(t));
  e.canonicalize();
  return e;
}

RadialPowerExpr RadialPowerExpr::make_term(Poly coeff,
                                           std::vector<PowerFactor> fs) {
  const int dim = coeff.dim();
  for (const auto& f : fs)
    if (f.base.dim() != dim)
      throw DimensionMismatch("make_term: factor dimension mismatch");
  RadialPowerExpr e(dim);
  e.terms_.push_back(RadialTerm{std::move(coeff), std::move(fs)});
  e.canonicalize();
  return e;
}

void RadialPowerExpr::canonicalize() {
  for (const auto& t : terms_)
    if (t.coeff.dim() != dim_)
      throw DimensionMismatch("RadialPowerExpr: term dimension mismatch");

  std::vector<RadialTerm> clean;
  for (auto& t : terms_)
    if (canonicalize_term(t)) clean.push_back(std::move(t));

  // Collapse every gauge class to one term. Stripping shifts exponents by
  // integers only, so class membership is stable and one pass suffices.
  std::sort(clean.begin(), clean.end(),
            [](const RadialTerm& a, const RadialTerm& b) {
              return compare_class(a, b) < 0;
            });
  terms_.clear();
  std::size_t i = 0;
  while (i < clean.size()) {
    std::size_t j = i + 1;
    while (j < clean.size() && compare_class(clean[i], clean[j]) == 0) ++j;
    std::vector<RadialTerm> group(std::make_move_iterator(clean.begin() + i),
                                  std::make_move_iterator(clean.begin() + j));
    RadialTerm merged;
    if (merge_class(group, merged)) terms_.push_back(std::move(merged));
    i = j;
  }

  std::sort(terms_.begin(), terms_.end(),
            [](const RadialTerm& a, const RadialTerm& b) {
              return compare_factors(a.factors, b.factors) < 0;
            });
}

bool RadialPowerExpr::is_polynomial() const {
  for (const auto& t : terms_)
    if (!t.factors.empty()) return false;
  return true;
}

Poly RadialPowerExpr::as_polynomial() const {
  Poly p(dim_);
  for (const auto& t : terms_) {
    if (!t.factors.empty())
      throw InvalidParams("as_polynomial: expression has power factors");
    p += t.coeff;
  }
  return p;
}

bool RadialPowerExpr::is_even_in_last() const {
  for (const auto& t : terms_)
    if (!t.coeff.is_even_in_last()) return false;
  return true;
}

RadialPowerExpr RadialPowerExpr::operator-() const {
  RadialPowerExpr e = *this;
  for (auto& t : e.terms_) t.coeff = -t.coeff;
  return e;
}

RadialPowerExpr operator+(const RadialPowerExpr& a, const RadialPowerExpr& b) {
  if (a.dim_ != b.dim_)
    throw DimensionMismatch("RadialPowerExpr: dimension mismatch in +");
  RadialPowerExpr e(a.dim_);
  e.terms_ = a.terms_;
  e.terms_.insert(e.terms_.end(), b.terms_.begin(), b.terms_.end());
  e.canonicalize();
  return e;
}

RadialPowerExpr operator-(const RadialPowerExpr& a, const RadialPowerExpr& b) {
  return a + (-b);
}

RadialPowerExpr operator*(const Rational& c, const RadialPowerExpr& e) {
  RadialPowerExpr r = e;
  for (auto& t : r.terms_) t.coeff = c * t.coeff;
  r.canonicalize();
  return r;
}

RadialPowerExpr operator*(const Poly& p, const RadialPowerExpr& e) {
  if (p.dim() != e.dim_)
    throw DimensionMismatch("RadialPowerExpr: dimension mismatch in poly *");
  RadialPowerExpr r = e;
  for (auto& t : r.terms_) t.coeff = p * t.coeff;
  r.canonicalize();
  return r;
}

RadialPowerExpr operator*(const RadialPowerExpr& a, const RadialPowerExpr& b) {
  if (a.dim_ != b.dim_)
    throw DimensionMismatch("RadialPowerExpr: dimension mismatch in *");
  RadialPowerExpr r(a.dim_);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      RadialTerm t{ta.coeff * tb.coeff, ta.factors};
      t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
      r.terms_.push_back(std::move(t));
    }
  }
  r.canonicalize();
  return r;
}

bool RadialPowerExpr::operator==(const RadialPowerExpr& o) const {
  if (dim_ != o.dim_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (!(terms_[i].coeff == o.terms_[i].coeff)) return false;
    if (compare_factors(terms_[i].factors, o.terms_[i].factors) != 0)
      return false;
  }
  return true;
}

RadialPowerExpr RadialPowerExpr::differentiate(int axis) const {
  if (axis < 0 || axis >= dim_)
    throw AxisOutOfRange("RadialPowerExpr::differentiate: axis out of range");
  RadialPowerExpr r(dim_);
  for (const auto& t : terms_) {
    // product rule over the coefficient ...
    RadialTerm dcoeff{t.coeff.partial_derivative(axis), t.factors};
    if (!dcoeff.coeff.is_zero()) r.terms_.push_back(std::move(dcoeff));
    // ... and over each power factor (chain rule).
    for (std::size_t j = 0; j < t.factors.size(); ++j) {
      Poly dbase = t.factors[j].base.partial_derivative(axis);
      if (dbase.is_zero()) continue;
      RadialTerm dt{t.factors[j].exponent * (t.coeff * dbase), {}};
      dt.factors.reserve(t.factors.size());
      for (std::size_t k = 0; k < t.factors.size(); ++k) {
        Rational e = t.factors[k].exponent;
        if (k == j) e -= 1;
        dt.factors.emplace_back(t.factors[k].base, e);
      }
      r.terms_.push_back(std::move(dt));
    }
  }
  r.canonicalize();
  return r;
}

RadialPowerExpr RadialPowerExpr::divide_by_last_coordinate() const {
  const Poly last = Poly::variable(dim_ - 1, dim_);
  RadialPowerExpr r(dim_);
  for (const auto& t : terms_) {
    auto q = t.coeff.divide_exact(last);
    if (!q)
      throw NotDivisible(
          "divide_by_last_coordinate: term is not divisible by x_last");
    r.terms_.push_back(RadialTerm{std::move(*q), t.factors});
  }
  r.canonicalize();
  return r;
}

double RadialPowerExpr::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dim_)
    throw DimensionMismatch("RadialPowerExpr::evaluate: dimension mismatch");
  double acc = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.evaluate(point);
    for (const auto& f : t.factors) {
      const double b = f.base.evaluate(point);
      // Normal form keeps only fractional or negative exponents here, so
      // the base must be strictly positive.
      if (b <= 0.0)
        throw SingularEvaluation(
            "evaluate: nonpositive base under fractional or negative power");
      v *= std::pow(b, to_double(f.exponent));
    }
    acc += v;
  }
  return acc;
}

std::string RadialPowerExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t.coeff.to_string() << ")";
    for (const auto& f : t.factors)
      os << "*(" << f.base.to_string() << ")^(" << degen::to_string(f.exponent)
         << ")";
  }
  return os.str();
}

RadialPowerExpr normalize(const RadialPowerExpr& e) {
  RadialPowerExpr r = e;
  return r;
}

}  // namespace degen
