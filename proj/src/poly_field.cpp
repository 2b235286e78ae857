#include "magnus/poly_field.hpp"

#include "magnus/errors.hpp"

namespace magnus {

PolyField PolyField::constant(const QMatrix &c) { return monomial(c, 0); }

PolyField PolyField::monomial(const QMatrix &c, int power) {
  if (!c.square())
    throw DimensionMismatch("field coefficients must be square");
  if (power < 0)
    throw DimensionMismatch("negative power in a polynomial field");
  PolyField f(c.rows());
  f.add(power, c);
  return f;
}

int PolyField::degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first;
}

QMatrix PolyField::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? QMatrix(dim_, dim_) : it->second;
}

void PolyField::add(int power, const QMatrix &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(power, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

QMatrix PolyField::evaluate(const Rational &x) const {
  QMatrix r(dim_, dim_);
  for (const auto &[p, c] : terms_)
    r += pow(x, p) * c;
  return r;
}

DMatrix PolyField::evaluate(double x) const {
  DMatrix r(dim_, dim_);
  for (const auto &[p, c] : terms_) {
    double xp = 1;
    for (int i = 0; i < p; ++i)
      xp *= x;
    DMatrix dc = to_double(c);
    dc *= xp;
    r += dc;
  }
  return r;
}

PolyField PolyField::integrate(const Rational &lower) const {
  PolyField r(dim_);
  QMatrix at_lower(dim_, dim_);
  for (const auto &[p, c] : terms_) {
    QMatrix ci = Rational(1, p + 1) * c;
    r.add(p + 1, ci);
    at_lower += pow(lower, p + 1) * ci;
  }
  r.add(0, -at_lower);
  return r;
}

PolyField PolyField::derivative() const {
  PolyField r(dim_);
  for (const auto &[p, c] : terms_)
    if (p > 0)
      r.add(p - 1, Rational(p) * c);
  return r;
}

void PolyField::check_compatible(const PolyField &o) const {
  if (dim_ != o.dim_)
    throw DimensionMismatch("fields of dimension " + std::to_string(dim_) +
                            " and " + std::to_string(o.dim_));
}

PolyField &PolyField::operator+=(const PolyField &o) {
  check_compatible(o);
  for (const auto &[p, c] : o.terms_)
    add(p, c);
  return *this;
}

PolyField &PolyField::operator-=(const PolyField &o) {
  check_compatible(o);
  for (const auto &[p, c] : o.terms_)
    add(p, -c);
  return *this;
}

PolyField PolyField::operator-() const {
  PolyField r(dim_);
  for (const auto &[p, c] : terms_)
    r.terms_.emplace(p, -c);
  return r;
}

PolyField operator*(const PolyField &a, const PolyField &b) {
  a.check_compatible(b);
  PolyField r(a.dim_);
  for (const auto &[pa, ca] : a.terms_)
    for (const auto &[pb, cb] : b.terms_)
      r.add(pa + pb, ca * cb);
  return r;
}

PolyField operator*(const Rational &q, const PolyField &a) {
  PolyField r(a.dim_);
  for (const auto &[p, c] : a.terms_)
    r.add(p, q * c);
  return r;
}

std::string PolyField::to_string() const {
  if (terms_.empty())
    return "0";
  std::string s;
  for (const auto &[p, c] : terms_) {
    if (!s.empty())
      s += " + ";
    s += c.to_string();
    if (p == 1)
      s += " x";
    else if (p > 1)
      s += " x^" + std::to_string(p);
  }
  return s;
}

MultiPoly MultiPoly::from_field(const PolyField &f, int var, int vars) {
  MultiPoly m(vars, f.dim());
  for (const auto &[p, c] : f.terms()) {
    std::vector<int> e(vars, 0);
    e[var] = p;
    m.add(e, c);
  }
  return m;
}

void MultiPoly::add(const std::vector<int> &exps, const QMatrix &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

MultiPoly &MultiPoly::operator+=(const MultiPoly &o) {
  for (const auto &[e, c] : o.terms_)
    add(e, c);
  return *this;
}

MultiPoly operator-(const MultiPoly &a, const MultiPoly &b) {
  MultiPoly r = a;
  for (const auto &[e, c] : b.terms_)
    r.add(e, -c);
  return r;
}

MultiPoly operator*(const MultiPoly &a, const MultiPoly &b) {
  if (a.vars_ != b.vars_ || a.dim_ != b.dim_)
    throw DimensionMismatch("multivariate polynomials in different spaces");
  MultiPoly r(a.vars_, a.dim_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      std::vector<int> e(ea);
      for (int i = 0; i < a.vars_; ++i)
        e[i] += eb[i];
      r.add(e, ca * cb);
    }
  return r;
}

MultiPoly operator*(const Rational &q, MultiPoly a) {
  MultiPoly r(a.vars_, a.dim_);
  for (const auto &[e, c] : a.terms_)
    r.add(e, q * c);
  return r;
}

MultiPoly MultiPoly::integrate_to_var(int var, int upper_var,
                                      const Rational &lower) const {
  MultiPoly r(vars_, dim_);
  for (const auto &[e, c] : terms_) {
    const int p = e[var];
    const QMatrix ci = Rational(1, p + 1) * c;
    std::vector<int> hi(e);
    hi[var] = 0;
    hi[upper_var] += p + 1;
    r.add(hi, ci);
    if (!lower.is_zero()) {
      std::vector<int> lo(e);
      lo[var] = 0;
      r.add(lo, -(pow(lower, p + 1) * ci));
    }
  }
  return r;
}

PolyField MultiPoly::to_field(int var) const {
  PolyField f(dim_);
  for (const auto &[e, c] : terms_) {
    for (int i = 0; i < vars_; ++i)
      if (i != var && e[i] != 0)
        throw DimensionMismatch("polynomial still depends on other variables");
    f += PolyField::monomial(c, e[var]);
  }
  return f;
}

PolyField simplex_integral(const MultiPoly &f, const Rational &lower) {
  const int k = f.vars();
  if (k == 0)
    throw DimensionMismatch("simplex integral needs at least one variable");
  MultiPoly g = f;
  for (int v = 0; v + 1 < k; ++v)
    g = g.integrate_to_var(v, v + 1, lower);
  // Outermost variable runs from lower to x: integrate it into itself.
  g = g.integrate_to_var(k - 1, k - 1, lower);
  return g.to_field(k - 1);
}

} // namespace magnus
