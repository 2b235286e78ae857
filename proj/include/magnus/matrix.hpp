#pragma once

#include "magnus/errors.hpp"
#include "magnus/kernels.hpp"
#include "magnus/rational.hpp"

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

namespace magnus {

namespace detail {
template <class S> S from_rational(const Rational &q) {
  if constexpr (std::is_same_v<S, Rational>)
    return q;
  else
    return static_cast<S>(q.to_double());
}
template <class S> double magnitude(const S &v) {
  if constexpr (std::is_same_v<S, Rational>)
    return abs(v).to_double();
  else
    return std::fabs(v);
}
std::string format_scalar(const Rational &v);
std::string format_scalar(double v);
} // namespace detail

/// Dense row-major matrix over Rational (exact) or double (float).
template <class S> class Matrix {
public:
  using scalar_type = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static Matrix zero(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = S(1);
    return m;
  }
  static Matrix from_rows(std::initializer_list<std::initializer_list<S>> rows) {
    Matrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto &row : rows) {
      if (row.size() != m.cols_)
        throw DimensionMismatch("ragged matrix literal");
      std::size_t j = 0;
      for (const auto &v : row)
        m(i, j++) = v;
      ++i;
    }
    return m;
  }
  /// e_{i,j} with 0-based indices.
  static Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(n, n);
    m(i, j) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  const std::vector<S> &data() const { return data_; }
  std::vector<S> &data() { return data_; }

  Matrix identity_like() const { return identity(rows_); }
  Matrix zero_like() const { return Matrix(rows_, cols_); }

  bool is_zero() const {
    for (const auto &v : data_)
      if (!kernels::is_zero_entry(v))
        return false;
    return true;
  }

  void check_compatible(const Matrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix shapes " + shape() + " and " + o.shape());
  }

  Matrix &operator+=(const Matrix &o) {
    check_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] += o.data_[i];
    return *this;
  }
  Matrix &operator-=(const Matrix &o) {
    check_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] -= o.data_[i];
    return *this;
  }
  Matrix &operator*=(const S &s) {
    for (auto &v : data_)
      v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto &v : r.data_)
      v = -v;
    return r;
  }
  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw DimensionMismatch("cannot multiply " + a.shape() + " by " +
                              b.shape());
    Matrix c;
    c.rows_ = a.rows_;
    c.cols_ = b.cols_;
    kernels::matmul_parallel(a.data_, b.data_, c.data_, a.rows_, a.cols_,
                             b.cols_);
    return c;
  }
  friend Matrix operator*(const Rational &q, Matrix a) {
    return a *= detail::from_rational<S>(q);
  }
  friend Matrix operator*(Matrix a, const Rational &q) {
    return a *= detail::from_rational<S>(q);
  }
  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  S trace() const {
    if (!square())
      throw DimensionMismatch("trace of non-square " + shape());
    S t(0);
    for (std::size_t i = 0; i < rows_; ++i)
      t += (*this)(i, i);
    return t;
  }

  /// Gauss-Jordan; exact in Rational mode, partial pivoting in double mode.
  Matrix inverse() const {
    if (!square())
      throw DimensionMismatch("inverse of non-square " + shape());
    const std::size_t n = rows_;
    Matrix a = *this, inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = n;
      double best = 0;
      for (std::size_t r = col; r < n; ++r) {
        if (kernels::is_zero_entry(a(r, col)))
          continue;
        const double mag = detail::magnitude(a(r, col));
        if (piv == n || (!std::is_same_v<S, Rational> && mag > best)) {
          piv = r;
          best = mag;
          if constexpr (std::is_same_v<S, Rational>)
            break;
        }
      }
      if (piv == n)
        throw SingularError("matrix is singular");
      if (piv != col)
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a(col, j), a(piv, j));
          std::swap(inv(col, j), inv(piv, j));
        }
      const S p = a(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(col, j) /= p;
        inv(col, j) /= p;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || kernels::is_zero_entry(a(r, col)))
          continue;
        const S f = a(r, col);
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) -= f * a(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

  S determinant() const {
    if (!square())
      throw DimensionMismatch("determinant of non-square " + shape());
    const std::size_t n = rows_;
    Matrix a = *this;
    S det(1);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = n;
      for (std::size_t r = col; r < n; ++r)
        if (!kernels::is_zero_entry(a(r, col))) {
          piv = r;
          break;
        }
      if (piv == n)
        return S(0);
      if (piv != col) {
        for (std::size_t j = 0; j < n; ++j)
          std::swap(a(col, j), a(piv, j));
        det = -det;
      }
      det *= a(col, col);
      for (std::size_t r = col + 1; r < n; ++r) {
        if (kernels::is_zero_entry(a(r, col)))
          continue;
        const S f = a(r, col) / a(col, col);
        for (std::size_t j = col; j < n; ++j)
          a(r, j) -= f * a(col, j);
      }
    }
    return det;
  }

  /// Largest absolute entry (the max-entry norm).
  double max_abs() const {
    double m = 0;
    for (const auto &v : data_)
      m = std::max(m, detail::magnitude(v));
    return m;
  }

  /// Exact max-entry norm; only for Rational matrices.
  Rational max_abs_exact() const
    requires std::is_same_v<S, Rational>
  {
    Rational m = 0;
    for (const auto &v : data_)
      if (abs(v) > m)
        m = abs(v);
    return m;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  std::string to_string() const {
    if (rows_ == 1 && cols_ == 1)
      return detail::format_scalar(data_[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j)
          s += ", ";
        s += detail::format_scalar((*this)(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> data_;
};

using QMatrix = Matrix<Rational>;
using DMatrix = Matrix<double>;

/// Serial reference product, for comparisons against the parallel kernel.
template <class S> Matrix<S> multiply_serial(const Matrix<S> &a,
                                             const Matrix<S> &b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("cannot multiply " + a.shape() + " by " +
                            b.shape());
  Matrix<S> c(a.rows(), b.cols());
  kernels::matmul_serial(a.data(), b.data(), c.data(), a.rows(), a.cols(),
                         b.cols());
  return c;
}

DMatrix to_double(const QMatrix &m);

} // namespace magnus
