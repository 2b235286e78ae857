#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>

namespace magnus {

/// Exact rational number backed by GMP. Always held in lowest terms with a
/// positive denominator; no operation ever rounds.
class Rational {
public:
  Rational() = default;

  template <std::integral I>
  Rational(I v) : v_(static_cast<long>(v)) {} // NOLINT: integers promote

  Rational(long num, long den);
  Rational(const mpz_class &num, const mpz_class &den);
  explicit Rational(mpq_class v);

  /// Accepts "p", "-p", "p/q".
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  const mpq_class &raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  int sign() const { return sgn(v_); }
  double to_double() const { return v_.get_d(); }
  std::string str() const;

  Rational &operator+=(const Rational &o);
  Rational &operator-=(const Rational &o);
  Rational &operator*=(const Rational &o);
  Rational &operator/=(const Rational &o);

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational &a, const Rational &b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational &a,
                                          const Rational &b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater
                          : std::strong_ordering::equal);
  }

private:
  mpq_class v_{0};
};

Rational abs(const Rational &q);
Rational pow(const Rational &base, unsigned exponent);
/// n! as an exact rational.
Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

std::ostream &operator<<(std::ostream &os, const Rational &q);

} // namespace magnus
