#pragma once

#include "magnus/operator.hpp"

#include <string>
#include <vector>

namespace magnus {

/// Truncated power series c_0 + c_1 a + ... + c_D a^D with operator
/// coefficients. Products drop every degree above D.
template <OperatorAlgebra Op> class AlphaSeries {
public:
  AlphaSeries(int order, const Op &prototype)
      : coeffs_(static_cast<std::size_t>(check_order(order)) + 1,
                prototype.zero_like()) {}

  static AlphaSeries identity(int order, const Op &prototype) {
    AlphaSeries s(order, prototype);
    s.coeffs_[0] = prototype.identity_like();
    return s;
  }
  /// 1 + a*x for a single operator x.
  static AlphaSeries linear(int order, const Op &x) {
    AlphaSeries s = identity(order, x);
    if (order >= 1)
      s.coeffs_[1] = x;
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Op &operator[](int k) const { return coeffs_.at(k); }
  Op &operator[](int k) { return coeffs_.at(k); }
  const std::vector<Op> &coeffs() const { return coeffs_; }
  const Op &prototype() const { return coeffs_[0]; }

  void check_compatible(const AlphaSeries &o) const {
    if (order() != o.order())
      throw TruncationMismatch("truncation orders " + std::to_string(order()) +
                               " and " + std::to_string(o.order()));
    coeffs_[0].check_compatible(o.coeffs_[0]);
  }

  AlphaSeries &operator+=(const AlphaSeries &o) {
    check_compatible(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      coeffs_[k] = coeffs_[k] + o.coeffs_[k];
    return *this;
  }
  AlphaSeries &operator-=(const AlphaSeries &o) {
    check_compatible(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
      coeffs_[k] = coeffs_[k] - o.coeffs_[k];
    return *this;
  }
  friend AlphaSeries operator+(AlphaSeries a, const AlphaSeries &b) {
    return a += b;
  }
  friend AlphaSeries operator-(AlphaSeries a, const AlphaSeries &b) {
    return a -= b;
  }
  friend AlphaSeries operator*(const Rational &q, AlphaSeries a) {
    for (auto &c : a.coeffs_)
      c = q * c;
    return a;
  }
  friend bool operator==(const AlphaSeries &a, const AlphaSeries &b) {
    return a.coeffs_ == b.coeffs_;
  }

  bool is_zero() const {
    for (const auto &c : coeffs_)
      if (!c.is_zero())
        return false;
    return true;
  }

  /// Apply a -> -a.
  AlphaSeries negate_parameter() const {
    AlphaSeries r = *this;
    for (std::size_t k = 1; k < coeffs_.size(); k += 2)
      r.coeffs_[k] = -r.coeffs_[k];
    return r;
  }

  /// Same coefficients, truncated (or zero-padded) to a new order.
  AlphaSeries retruncate(int order) const {
    AlphaSeries r(order, coeffs_[0]);
    for (int k = 0; k <= std::min(order, this->order()); ++k)
      r.coeffs_[k] = coeffs_[k];
    return r;
  }

private:
  static int check_order(int order) {
    if (order < 0)
      throw TruncationMismatch("truncation order must be non-negative");
    return order;
  }
  std::vector<Op> coeffs_;
};

template <OperatorAlgebra Op>
AlphaSeries<Op> series_mul(const AlphaSeries<Op> &a, const AlphaSeries<Op> &b) {
  a.check_compatible(b);
  const int d = a.order();
  AlphaSeries<Op> r(d, a.prototype());
  for (int i = 0; i <= d; ++i) {
    if (a[i].is_zero())
      continue;
    for (int j = 0; i + j <= d; ++j)
      if (!b[j].is_zero())
        r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

template <OperatorAlgebra Op>
AlphaSeries<Op> operator*(const AlphaSeries<Op> &a, const AlphaSeries<Op> &b) {
  return series_mul(a, b);
}

/// Coefficientwise product with a constant operator on the right/left.
template <OperatorAlgebra Op>
AlphaSeries<Op> series_mul_right(const AlphaSeries<Op> &a, const Op &m) {
  AlphaSeries<Op> r(a.order(), m);
  for (int k = 0; k <= a.order(); ++k)
    r[k] = a[k] * m;
  return r;
}
template <OperatorAlgebra Op>
AlphaSeries<Op> series_mul_left(const Op &m, const AlphaSeries<Op> &a) {
  AlphaSeries<Op> r(a.order(), m);
  for (int k = 0; k <= a.order(); ++k)
    r[k] = m * a[k];
  return r;
}

template <OperatorAlgebra Op>
AlphaSeries<Op> series_exp(const AlphaSeries<Op> &q) {
  if (!q[0].is_zero())
    throw ConstantTermError("series_exp needs a zero constant term");
  const int d = q.order();
  AlphaSeries<Op> result = AlphaSeries<Op>::identity(d, q.prototype());
  AlphaSeries<Op> term = result;
  // q^n has no terms below degree n, so D powers suffice.
  for (int n = 1; n <= d; ++n) {
    term = Rational(1, n) * series_mul(term, q);
    result += term;
  }
  return result;
}

template <OperatorAlgebra Op>
AlphaSeries<Op> series_log(const AlphaSeries<Op> &t) {
  const Op one = t.prototype().identity_like();
  if (!(t[0] - one).is_zero())
    throw ConstantTermError("series_log needs an identity constant term");
  const int d = t.order();
  AlphaSeries<Op> x = t;
  x[0] = one.zero_like();
  AlphaSeries<Op> result(d, one), power = x;
  for (int n = 1; n <= d; ++n) {
    const Rational c = Rational((n % 2) ? 1 : -1, n);
    result += c * power;
    power = series_mul(power, x);
  }
  return result;
}

/// Multiplicative inverse by Neumann iteration around the inverse of the
/// constant term: t^{-1} = sum_k (-c0^{-1} x)^k c0^{-1} with x = t - c0.
template <OperatorAlgebra Op>
AlphaSeries<Op> series_inverse(const AlphaSeries<Op> &t) {
  const int d = t.order();
  const Op c0inv = t[0].inverse();
  AlphaSeries<Op> x = t;
  x[0] = t[0].zero_like();
  AlphaSeries<Op> u = series_mul_left(Op(-c0inv), x);
  AlphaSeries<Op> result = AlphaSeries<Op>::identity(d, t.prototype());
  AlphaSeries<Op> power = result;
  for (int k = 1; k <= d; ++k) {
    power = series_mul(power, u);
    result += power;
  }
  return series_mul_right(result, c0inv);
}

template <OperatorAlgebra Op>
std::string series_str(const AlphaSeries<Op> &s) {
  std::string out;
  for (int k = 0; k <= s.order(); ++k) {
    if (k)
      out += "\n";
    out += "a^" + std::to_string(k) + ": " + s[k].to_string();
  }
  return out;
}

} // namespace magnus
