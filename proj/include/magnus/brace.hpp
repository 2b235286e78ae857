#pragma once

// From a graded, degree-truncated pre-Lie algebra to a left brace: the
// formal flow W, its inverse Omega, the brace product and BCH composition.
// Elements are lists of homogeneous components of degrees 1..D; anything of
// degree above D is dropped, which makes the algebra nilpotent.

#include "magnus/alpha_series.hpp"
#include "magnus/free_algebra.hpp"

#include <functional>
#include <string>
#include <vector>

namespace magnus {

template <class C> struct Graded {
  std::vector<C> parts; ///< parts[k-1] has degree k

  int max_degree() const { return static_cast<int>(parts.size()); }
  const C &operator[](int k) const { return parts.at(k - 1); }
  C &operator[](int k) { return parts.at(k - 1); }

  bool is_zero() const {
    for (const auto &p : parts)
      if (!p.is_zero())
        return false;
    return true;
  }
  friend bool operator==(const Graded &a, const Graded &b) {
    return a.parts == b.parts;
  }
  friend Graded operator+(Graded a, const Graded &b) {
    for (std::size_t k = 0; k < a.parts.size(); ++k)
      a.parts[k] = a.parts[k] + b.parts.at(k);
    return a;
  }
  friend Graded operator-(Graded a, const Graded &b) {
    for (std::size_t k = 0; k < a.parts.size(); ++k)
      a.parts[k] = a.parts[k] - b.parts.at(k);
    return a;
  }
  friend Graded operator*(const Rational &q, Graded a) {
    for (auto &p : a.parts)
      p = q * p;
    return a;
  }
};

/// A pre-Lie product extended bilinearly to graded elements.
template <class C> class GradedPreLie {
public:
  using Product = std::function<C(const C &, const C &)>;
  using Element = Graded<C>;

  GradedPreLie(int max_degree, C zero, Product product)
      : d_(max_degree), zero_(std::move(zero)), prod_(std::move(product)) {}

  int max_degree() const { return d_; }

  Element zero() const { return {std::vector<C>(d_, zero_)}; }
  /// x placed in degree k.
  Element homogeneous(const C &x, int k) const {
    Element e = zero();
    if (k >= 1 && k <= d_)
      e[k] = x;
    return e;
  }

  Element prelie(const Element &a, const Element &b) const {
    Element r = zero();
    for (int i = 1; i < d_; ++i) {
      if (a[i].is_zero())
        continue;
      for (int j = 1; i + j <= d_; ++j)
        if (!b[j].is_zero())
          r[i + j] = r[i + j] + prod_(a[i], b[j]);
    }
    return r;
  }

  /// [a,b] = a|>b - b|>a.
  Element bracket(const Element &a, const Element &b) const {
    return prelie(a, b) - prelie(b, a);
  }

  /// e^{L_a}(b) = b + a|>b + 1/2 a|>(a|>b) + ...
  Element exp_left(const Element &a, const Element &b) const {
    Element result = b, term = b;
    for (int k = 1; k <= d_; ++k) {
      term = Rational(1, k) * prelie(a, term);
      if (term.is_zero())
        break;
      result = result + term;
    }
    return result;
  }

  /// W(a) = e^{L_a}(1) - 1 = a + 1/2 a|>a + 1/6 a|>(a|>a) + ...
  Element w_map(const Element &a) const {
    Element result = a, term = a;
    for (int k = 2; k <= d_; ++k) {
      term = Rational(1, k) * prelie(a, term);
      if (term.is_zero())
        break;
      result = result + term;
    }
    return result;
  }

  /// Inverse of W. Each pass of x <- b - (W(x) - x) fixes one more degree.
  Element omega_map(const Element &b) const {
    Element x = b;
    for (int k = 1; k < d_; ++k)
      x = b - (w_map(x) - x);
    return x;
  }

  /// a o b = a + e^{L_{Omega(a)}}(b).
  Element brace_mul(const Element &a, const Element &b) const {
    return a + exp_left(omega_map(a), b);
  }

  /// log(e^a e^b) in the Lie algebra of the pre-Lie product, computed in
  /// the free associative algebra and mapped back through the Dynkin
  /// projection.
  Element bch(const Element &a, const Element &b) const {
    const FreeElement z;
    AlphaSeries<FreeElement> sa(d_, z), sb(d_, z);
    for (int k = 1; k <= d_; ++k) {
      if (!a[k].is_zero())
        sa[k] = FreeElement::letter("a", 1, k);
      if (!b[k].is_zero())
        sb[k] = FreeElement::letter("b", 1, k);
    }
    const auto c = series_log(series_mul(series_exp(sa), series_exp(sb)));
    Element r = zero();
    for (int k = 1; k <= d_; ++k)
      for (const auto &[w, coef] : c[k].terms()) {
        // [l1,[l2,...,ln]] divided by n recovers a Lie polynomial from its
        // associative expansion.
        Element nested = letter_value(w.back(), a, b);
        for (int i = static_cast<int>(w.size()) - 2; i >= 0; --i)
          nested = bracket(letter_value(w[i], a, b), nested);
        r = r + (coef / Rational(static_cast<long>(w.size()))) * nested;
      }
    return r;
  }

  /// a + b + 1/2[a,b] + 1/12([a,[a,b]] + [b,[b,a]]), exact when D <= 3.
  Element bch_third_order(const Element &a, const Element &b) const {
    const Element ab = bracket(a, b);
    return a + b + Rational(1, 2) * ab +
           Rational(1, 12) * (bracket(a, ab) + bracket(b, bracket(b, a)));
  }

private:
  Element letter_value(const Letter &l, const Element &a,
                       const Element &b) const {
    return homogeneous(l.name == "a" ? a[l.degree] : b[l.degree], l.degree);
  }

  int d_;
  C zero_;
  Product prod_;
};

} // namespace magnus
