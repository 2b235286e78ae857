#pragma once

// Matrix-valued polynomials in a real variable x. These carry the continuous
// fields A(x) and everything built from them by exact integration.

#include "magnus/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace magnus {

/// sum_k C_k x^k with square matrix coefficients.
class PolyField {
public:
  PolyField() = default;
  explicit PolyField(std::size_t dim) : dim_(dim) {}

  static PolyField constant(const QMatrix &c);
  /// c * x^power.
  static PolyField monomial(const QMatrix &c, int power);

  std::size_t dim() const { return dim_; }
  int degree() const; ///< -1 for the zero polynomial
  QMatrix coefficient(int power) const;
  const std::map<int, QMatrix> &terms() const { return terms_; }

  QMatrix evaluate(const Rational &x) const;
  DMatrix evaluate(double x) const;

  /// x -> integral from lower to x.
  PolyField integrate(const Rational &lower) const;
  PolyField derivative() const;

  PolyField identity_like() const { return constant(QMatrix::identity(dim_)); }
  PolyField zero_like() const { return PolyField(dim_); }
  bool is_zero() const { return terms_.empty(); }
  void check_compatible(const PolyField &o) const;

  PolyField &operator+=(const PolyField &o);
  PolyField &operator-=(const PolyField &o);
  friend PolyField operator+(PolyField a, const PolyField &b) { return a += b; }
  friend PolyField operator-(PolyField a, const PolyField &b) { return a -= b; }
  PolyField operator-() const;
  friend PolyField operator*(const PolyField &a, const PolyField &b);
  friend PolyField operator*(const Rational &q, const PolyField &a);
  friend bool operator==(const PolyField &a, const PolyField &b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// e.g. "[[0, 1], [0, 0]] + [[0, 0], [1, 0]] x".
  std::string to_string() const;

private:
  void add(int power, const QMatrix &c);
  std::size_t dim_ = 0;
  std::map<int, QMatrix> terms_;
};

/// Matrix polynomial in variables y_0..y_{k-1}; used for iterated integrals
/// over ordered simplices.
class MultiPoly {
public:
  MultiPoly(int vars, std::size_t dim) : vars_(vars), dim_(dim) {}

  /// A(y_var) for a one-variable field.
  static MultiPoly from_field(const PolyField &f, int var, int vars);

  int vars() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }

  MultiPoly &operator+=(const MultiPoly &o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly &b) { return a += b; }
  friend MultiPoly operator-(const MultiPoly &a, const MultiPoly &b);
  friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b);
  friend MultiPoly operator*(const Rational &q, MultiPoly a);

  /// Integrate variable `var` from `lower` up to variable `upper_var`
  /// (dropping `var` from the monomials).
  MultiPoly integrate_to_var(int var, int upper_var,
                             const Rational &lower) const;
  /// Once only y_last remains, read it off as a field in x.
  PolyField to_field(int var) const;

private:
  void add(const std::vector<int> &exps, const QMatrix &c);
  int vars_;
  std::size_t dim_;
  std::map<std::vector<int>, QMatrix> terms_;
};

/// Integral over lower <= y_0 <= y_1 <= ... <= y_{k-1} <= x of f; the
/// outermost variable y_{k-1} becomes x.
PolyField simplex_integral(const MultiPoly &f, const Rational &lower);

} // namespace magnus
