#include "magnus/rational.hpp"

#include "magnus/errors.hpp"

#include <ostream>

namespace magnus {

Rational::Rational(long num, long den) {
  if (den == 0)
    throw std::domain_error("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpz_class &num, const mpz_class &den) {
  if (sgn(den) == 0)
    throw std::domain_error("Rational: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '+'))
      s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
      s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty())
    throw ParseError("empty rational literal");
  auto parse_int = [](std::string_view s) {
    if (s.empty())
      throw ParseError("bad rational literal");
    std::size_t i = (s.front() == '-') ? 1 : 0;
    if (i == s.size())
      throw ParseError("bad rational literal '" + std::string(s) + "'");
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        throw ParseError("bad rational literal '" + std::string(s) + "'");
    return mpz_class(std::string(s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(text), mpz_class(1));
  mpz_class den = parse_int(trim(text.substr(slash + 1)));
  if (sgn(den) == 0)
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(trim(text.substr(0, slash))), den);
}

std::string Rational::str() const { return v_.get_str(); }

Rational &Rational::operator+=(const Rational &o) {
  v_ += o.v_;
  return *this;
}
Rational &Rational::operator-=(const Rational &o) {
  v_ -= o.v_;
  return *this;
}
Rational &Rational::operator*=(const Rational &o) {
  v_ *= o.v_;
  return *this;
}
Rational &Rational::operator/=(const Rational &o) {
  if (o.is_zero())
    throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational &q) { return q.sign() < 0 ? -q : q; }

Rational pow(const Rational &base, unsigned exponent) {
  Rational r = 1;
  for (unsigned i = 0; i < exponent; ++i)
    r *= base;
  return r;
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f, mpz_class(1));
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b, mpz_class(1));
}

std::ostream &operator<<(std::ostream &os, const Rational &q) {
  return os << q.str();
}

} // namespace magnus
