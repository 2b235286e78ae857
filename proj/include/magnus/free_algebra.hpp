#pragma once

#include "magnus/errors.hpp"
#include "magnus/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace magnus {

/// A generator of the free algebra: a named operator sitting on a site and
/// carrying an alpha-degree, e.g. L^(2)_3.
struct Letter {
  std::string name;
  int site = 1;
  int degree = 1;

  auto operator<=>(const Letter &) const = default;
  bool operator==(const Letter &) const = default;
  std::string str() const;
};

using Word = std::vector<Letter>;

int word_degree(const Word &w);
std::string word_str(const Word &w);

/// Finite rational combination of words; the product concatenates words.
/// Zero coefficients are never stored.
class FreeElement {
public:
  FreeElement() = default;

  static FreeElement one() { return scalar(1); }
  static FreeElement scalar(const Rational &c);
  static FreeElement letter(const std::string &name, int site, int degree = 1);
  static FreeElement word(const Word &w, const Rational &c = 1);

  const std::map<Word, Rational> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Word &w) const;
  /// Coefficient of the empty word.
  Rational constant() const { return coefficient({}); }
  /// Keep only words of the given total alpha-degree.
  FreeElement homogeneous(int degree) const;

  FreeElement identity_like() const { return one(); }
  FreeElement zero_like() const { return {}; }
  void check_compatible(const FreeElement &) const {}

  FreeElement &operator+=(const FreeElement &o);
  FreeElement &operator-=(const FreeElement &o);
  FreeElement &operator*=(const Rational &q);

  friend FreeElement operator+(FreeElement a, const FreeElement &b) {
    return a += b;
  }
  friend FreeElement operator-(FreeElement a, const FreeElement &b) {
    return a -= b;
  }
  FreeElement operator-() const;
  friend FreeElement operator*(const FreeElement &a, const FreeElement &b);
  friend FreeElement operator*(const Rational &q, FreeElement a) {
    return a *= q;
  }
  friend FreeElement operator*(FreeElement a, const Rational &q) {
    return a *= q;
  }
  friend bool operator==(const FreeElement &a, const FreeElement &b) {
    return a.terms_ == b.terms_;
  }

  /// Only nonzero scalars are invertible in the free algebra.
  FreeElement inverse() const;

  /// e.g. "2/3 P_2 P_1 - P_1"; "0" for the zero element.
  std::string str() const;
  std::string to_string() const { return str(); }

private:
  void add_term(const Word &w, const Rational &c);
  std::map<Word, Rational> terms_;
};

} // namespace magnus
