#pragma once

// Rota-Baxter operators and the actions they induce: the tridendriform
// triple (<, >, .) and the left/right pre-Lie products. Checkers return the
// defect itself so callers decide what "zero" means for their backend.

#include "magnus/operator.hpp"
#include "magnus/poly_field.hpp"

#include <array>
#include <string>
#include <vector>

namespace magnus {

/// x_1..x_N, 1-based, all in one backend. The prototype fixes the backend
/// and dimension even when N = 0.
template <OperatorAlgebra Op> class SiteSequence {
public:
  using value_type = Op;

  SiteSequence(int n, const Op &prototype)
      : proto_(prototype.zero_like()),
        values_(static_cast<std::size_t>(n), prototype.zero_like()) {}
  SiteSequence(std::vector<Op> values, const Op &prototype)
      : proto_(prototype.zero_like()), values_(std::move(values)) {
    for (const auto &v : values_)
      proto_.check_compatible(v);
  }

  int size() const { return static_cast<int>(values_.size()); }
  const Op &prototype() const { return proto_; }

  const Op &operator[](int n) const { return values_.at(check(n) - 1); }
  Op &operator[](int n) { return values_.at(check(n) - 1); }

  SiteSequence zero_like() const { return SiteSequence(size(), proto_); }
  SiteSequence identity_like() const {
    SiteSequence r(size(), proto_);
    for (auto &v : r.values_)
      v = proto_.identity_like();
    return r;
  }
  bool is_zero() const {
    for (const auto &v : values_)
      if (!v.is_zero())
        return false;
    return true;
  }
  void check_compatible(const SiteSequence &o) const {
    if (size() != o.size())
      throw DimensionMismatch("site sequences of length " +
                              std::to_string(size()) + " and " +
                              std::to_string(o.size()));
    proto_.check_compatible(o.proto_);
  }

  SiteSequence &operator+=(const SiteSequence &o) {
    check_compatible(o);
    for (std::size_t i = 0; i < values_.size(); ++i)
      values_[i] = values_[i] + o.values_[i];
    return *this;
  }
  SiteSequence &operator-=(const SiteSequence &o) {
    check_compatible(o);
    for (std::size_t i = 0; i < values_.size(); ++i)
      values_[i] = values_[i] - o.values_[i];
    return *this;
  }
  friend SiteSequence operator+(SiteSequence a, const SiteSequence &b) {
    return a += b;
  }
  friend SiteSequence operator-(SiteSequence a, const SiteSequence &b) {
    return a -= b;
  }
  SiteSequence operator-() const {
    SiteSequence r = *this;
    for (auto &v : r.values_)
      v = -v;
    return r;
  }
  /// Sitewise product.
  friend SiteSequence operator*(const SiteSequence &a, const SiteSequence &b) {
    a.check_compatible(b);
    SiteSequence r(a.size(), a.proto_);
    for (std::size_t i = 0; i < a.values_.size(); ++i)
      r.values_[i] = a.values_[i] * b.values_[i];
    return r;
  }
  friend SiteSequence operator*(const Rational &q, SiteSequence a) {
    for (auto &v : a.values_)
      v = q * v;
    return a;
  }
  friend bool operator==(const SiteSequence &a, const SiteSequence &b) {
    return a.values_ == b.values_;
  }

  /// Sum over all sites.
  Op total() const {
    Op s = proto_;
    for (const auto &v : values_)
      s = s + v;
    return s;
  }

  std::string to_string() const {
    std::string s;
    for (int n = 1; n <= size(); ++n)
      s += (n > 1 ? "; " : "") + std::to_string(n) + ": " +
           (*this)[n].to_string();
    return "{" + s + "}";
  }

private:
  int check(int n) const {
    if (n < 1 || n > size())
      throw SiteOutOfRange("site " + std::to_string(n) + " outside 1.." +
                           std::to_string(size()));
    return n;
  }
  Op proto_;
  std::vector<Op> values_;
};

enum class RBKind { PartialSum, RiemannIntegral };

/// The two Rota-Baxter operators used throughout: the strict partial sum on
/// site sequences (weight 1) and the integral from a fixed lower limit on
/// polynomial fields (weight 0).
struct RotaBaxterOp {
  RBKind kind = RBKind::PartialSum;
  Rational weight = 1;
  Rational lower_limit = 0;

  static RotaBaxterOp partial_sum() { return {RBKind::PartialSum, 1, 0}; }
  static RotaBaxterOp riemann_integral(const Rational &lower = 0) {
    return {RBKind::RiemannIntegral, 0, lower};
  }

  template <OperatorAlgebra Op>
  SiteSequence<Op> apply(const SiteSequence<Op> &f) const {
    if (kind != RBKind::PartialSum)
      throw KindMismatch("integral operator applied to a site sequence");
    SiteSequence<Op> r = f.zero_like();
    Op run = f.prototype();
    for (int n = 1; n <= f.size(); ++n) {
      r[n] = run;
      run = run + f[n];
    }
    return r;
  }

  PolyField apply(const PolyField &f) const {
    if (kind != RBKind::RiemannIntegral)
      throw KindMismatch("partial sum applied to a polynomial field");
    return f.integrate(lower_limit);
  }
};

/// sum_{m<n} f_m.
template <OperatorAlgebra Op> Op partial_sum(const SiteSequence<Op> &f, int n) {
  if (n < 1 || n > f.size())
    throw SiteOutOfRange("site " + std::to_string(n) + " outside 1.." +
                         std::to_string(f.size()));
  Op s = f.prototype();
  for (int m = 1; m < n; ++m)
    s = s + f[m];
  return s;
}

/// R(a)R(b) - R(R(a)b + aR(b) + weight*ab).
template <class C>
C rb_residual(const RotaBaxterOp &R, const C &a, const C &b) {
  const C ra = R.apply(a), rb = R.apply(b);
  return ra * rb - R.apply(ra * b + a * rb + R.weight * (a * b));
}

enum class TridOp { Prec, Succ, Dot };

/// x > y = R(x)y, x < y = xR(y), x . y = weight*xy.
template <class C> C trid(TridOp op, const C &a, const C &b, const RotaBaxterOp &R) {
  switch (op) {
  case TridOp::Succ:
    return R.apply(a) * b;
  case TridOp::Prec:
    return a * R.apply(b);
  case TridOp::Dot:
    break;
  }
  return R.weight * (a * b);
}

template <OperatorAlgebra Op>
Op trid_apply(TridOp op, const SiteSequence<Op> &a, const SiteSequence<Op> &b,
              int n) {
  return trid(op, a, b, RotaBaxterOp::partial_sum())[n];
}

/// x * y = x<y + x>y + x.y, which is associative.
template <class C> C trid_star(const C &a, const C &b, const RotaBaxterOp &R) {
  return trid(TridOp::Prec, a, b, R) + trid(TridOp::Succ, a, b, R) +
         trid(TridOp::Dot, a, b, R);
}

enum class PreLieSide { Left, Right };

/// Left: [R(a), b] + weight*ab. Right: [a, R(b)] + weight*ab.
template <class C>
C prelie(const RotaBaxterOp &R, PreLieSide side, const C &a, const C &b) {
  if (side == PreLieSide::Left) {
    const C ra = R.apply(a);
    return ra * b - b * ra + R.weight * (a * b);
  }
  const C rb = R.apply(b);
  return a * rb - rb * a + R.weight * (a * b);
}

template <OperatorAlgebra Op>
SiteSequence<Op> prelie_left(const SiteSequence<Op> &a,
                             const SiteSequence<Op> &b) {
  return prelie(RotaBaxterOp::partial_sum(), PreLieSide::Left, a, b);
}
template <OperatorAlgebra Op>
SiteSequence<Op> prelie_right(const SiteSequence<Op> &a,
                              const SiteSequence<Op> &b) {
  return prelie(RotaBaxterOp::partial_sum(), PreLieSide::Right, a, b);
}
template <OperatorAlgebra Op>
Op prelie_left(const SiteSequence<Op> &a, const SiteSequence<Op> &b, int n) {
  return prelie_left(a, b)[n];
}
template <OperatorAlgebra Op>
Op prelie_right(const SiteSequence<Op> &a, const SiteSequence<Op> &b, int n) {
  return prelie_right(a, b)[n];
}

inline constexpr std::array<const char *, 8> kTridendriformIdentities = {
    "(a<b)<c = a<(b*c)",     "(a>b)<c = a>(b<c)",
    "a>(b>c) = (a*b)>c",     "a.(b.c) = (a.b).c",
    "(a>b).c = a>(b.c)",     "(a<b).c = a.(b>c)",
    "(a.b)<c = a.(b<c)",     "(a*b)*c = a*(b*c)"};

/// LHS - RHS of the seven tridendriform axioms, then associativity of *.
/// The second axiom brackets as (a>b)<c; with < on the outside of
/// (a<b)>c instead, the identity fails for R(x)y, xR(y).
template <class C>
std::array<C, 8> check_tridendriform(const C &a, const C &b, const C &c,
                                     const RotaBaxterOp &R) {
  auto P = [&](const C &x, const C &y) { return trid(TridOp::Prec, x, y, R); };
  auto S = [&](const C &x, const C &y) { return trid(TridOp::Succ, x, y, R); };
  auto D = [&](const C &x, const C &y) { return trid(TridOp::Dot, x, y, R); };
  auto St = [&](const C &x, const C &y) { return trid_star(x, y, R); };
  return {P(P(a, b), c) - P(a, St(b, c)),
          P(S(a, b), c) - S(a, P(b, c)),
          S(a, S(b, c)) - S(St(a, b), c),
          D(a, D(b, c)) - D(D(a, b), c),
          D(S(a, b), c) - S(a, D(b, c)),
          D(P(a, b), c) - D(a, S(b, c)),
          P(D(a, b), c) - D(a, P(b, c)),
          St(St(a, b), c) - St(a, St(b, c))};
}

/// (a<b)>c - a>(b<c): the second axiom with its operations swapped, which
/// is not an identity of the partial-sum or integral operators.
template <class C>
C swapped_second_axiom(const C &a, const C &b, const C &c,
                       const RotaBaxterOp &R) {
  return trid(TridOp::Succ, trid(TridOp::Prec, a, b, R), c, R) -
         trid(TridOp::Succ, a, trid(TridOp::Prec, b, c, R), R);
}

/// Left: (a|>b)|>c - a|>(b|>c) - (b|>a)|>c + b|>(a|>c).
/// Right: (a<|b)<|c - a<|(b<|c) - (a<|c)<|b + a<|(c<|b).
template <class C>
C check_prelie(PreLieSide side, const C &a, const C &b, const C &c,
               const RotaBaxterOp &R) {
  auto p = [&](const C &x, const C &y) { return prelie(R, side, x, y); };
  if (side == PreLieSide::Left)
    return p(p(a, b), c) - p(a, p(b, c)) - p(p(b, a), c) + p(b, p(a, c));
  return p(p(a, b), c) - p(a, p(b, c)) - p(p(a, c), b) + p(a, p(c, b));
}

} // namespace magnus
