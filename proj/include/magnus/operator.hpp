#pragma once

#include "magnus/free_algebra.hpp"
#include "magnus/matrix.hpp"

#include <concepts>
#include <string>

namespace magnus {

/// What the expansion machinery needs from an operator backend.
template <class Op>
concept OperatorAlgebra = requires(const Op &a, const Op &b, const Rational &q) {
  { a + b } -> std::convertible_to<Op>;
  { a - b } -> std::convertible_to<Op>;
  { a * b } -> std::convertible_to<Op>;
  { q * a } -> std::convertible_to<Op>;
  { -a } -> std::convertible_to<Op>;
  { a.identity_like() } -> std::convertible_to<Op>;
  { a.zero_like() } -> std::convertible_to<Op>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.to_string() } -> std::convertible_to<std::string>;
  a.check_compatible(b);
};

static_assert(OperatorAlgebra<QMatrix>);
static_assert(OperatorAlgebra<DMatrix>);
static_assert(OperatorAlgebra<FreeElement>);

template <OperatorAlgebra Op> Op commutator(const Op &a, const Op &b) {
  return a * b - b * a;
}

/// ad_a^n(b) = [a, [a, ... [a, b]]].
template <OperatorAlgebra Op> Op ad_pow(const Op &a, const Op &b, unsigned n) {
  a.check_compatible(b);
  Op r = b;
  for (unsigned i = 0; i < n; ++i)
    r = commutator(a, r);
  return r;
}

template <OperatorAlgebra Op> Op power(const Op &a, unsigned n) {
  Op r = a.identity_like();
  for (unsigned i = 0; i < n; ++i)
    r = r * a;
  return r;
}

/// Size of a defect in human-readable form. Exact backends print
/// "exact-zero" or the largest offending coefficient; floats print %.3e.
std::string defect_string(const QMatrix &d);
std::string defect_string(const DMatrix &d);
std::string defect_string(const FreeElement &d);

/// Numeric magnitude used for tolerance checks.
double defect_norm(const QMatrix &d);
double defect_norm(const DMatrix &d);
double defect_norm(const FreeElement &d);

} // namespace magnus
