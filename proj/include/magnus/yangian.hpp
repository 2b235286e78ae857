#pragma once

// The rational R-matrix, its Lax operators and monodromies, checked in
// exact arithmetic on small tensor spaces. Slot 0 is the auxiliary space;
// slots 1..N are quantum sites.

#include "magnus/expansion.hpp"
#include "magnus/tensor.hpp"

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace magnus {

class InsufficientSamples : public Error {
public:
  using Error::Error;
};

/// A labelled exact defect. `asserted` is false for quantities that are
/// reported but not expected to vanish.
struct NamedDefect {
  std::string name;
  Rational size; ///< largest absolute entry
  bool asserted = true;
  bool zero() const { return size.is_zero(); }
};

/// Matrix-valued Laurent polynomial in one or two spectral parameters.
class MatrixPoly {
public:
  using Exponents = std::pair<int, int>;

  MatrixPoly(int vars, std::size_t dim);
  static MatrixPoly monomial(int vars, const QMatrix &c, int e1, int e2 = 0);

  int vars() const { return vars_; }
  std::size_t dim() const { return dim_; }
  const std::map<Exponents, QMatrix> &terms() const { return terms_; }
  QMatrix coefficient(int e1, int e2 = 0) const;
  bool is_zero() const { return terms_.empty(); }

  /// Smallest and largest exponent of each variable; {0,0} when empty.
  Exponents min_exponents() const;
  Exponents max_exponents() const;
  /// Largest e1 + e2 over the terms.
  int max_total_degree() const;

  /// Throws SingularError at a pole.
  QMatrix evaluate(const Rational &u1, const Rational &u2 = 0) const;
  /// Place every coefficient on `slots` of a larger tensor space.
  MatrixPoly embedded(const std::vector<int> &slots, int total,
                      std::size_t local_dim) const;

  MatrixPoly &operator+=(const MatrixPoly &o);
  friend MatrixPoly operator+(MatrixPoly a, const MatrixPoly &b) {
    return a += b;
  }
  friend MatrixPoly operator-(const MatrixPoly &a, const MatrixPoly &b);
  friend MatrixPoly operator*(const MatrixPoly &a, const MatrixPoly &b);
  friend bool operator==(const MatrixPoly &a, const MatrixPoly &b) {
    return a.vars_ == b.vars_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

private:
  void check(const MatrixPoly &o) const;
  void add(Exponents e, const QMatrix &c);
  int vars_;
  std::size_t dim_;
  std::map<Exponents, QMatrix> terms_;
};

/// (u1 - u2) 1 + P on C^n (x) C^n.
MatrixPoly yangian_r(std::size_t n);
/// R(u) = u 1 + P in the difference variable.
MatrixPoly yangian_r_difference(std::size_t n);
/// r(u) = P / u.
MatrixPoly classical_r(std::size_t n);

/// R12 R13 R23 - R23 R13 R12 on three factors. Two-variable R is evaluated
/// at (u_i, u_j), one-variable R at u_i - u_j.
QMatrix ybe_residual(const MatrixPoly &r, std::size_t n, const Rational &u1,
                     const Rational &u2, const Rational &u3);
/// [r12, r13] + [r12 + r13, r23] with difference arguments.
QMatrix classical_ybe_residual(const MatrixPoly &r, std::size_t n,
                               const Rational &u1, const Rational &u2,
                               const Rational &u3);

/// L(u) = 1 + sum_m u^{-m} L^(m) acting on aux (x) `slots` quantum factors.
struct LaxRep {
  std::size_t aux_dim = 2;
  int slots = 1;
  std::vector<QMatrix> coeffs; ///< L^(1), L^(2), ...
  /// False when the series was cut off and only low orders are meaningful.
  bool exact = true;

  static LaxRep fundamental(std::size_t n);
  /// sum_{m <= truncation} u^{-m} P^m, with L^(0) = 1.
  static LaxRep geometric(std::size_t n, int truncation);
  /// A monodromy viewed as a Lax operator on N quantum sites.
  static LaxRep from_series(const AlphaSeries<QMatrix> &t, std::size_t n,
                            int slots, bool exact);

  int degree() const { return static_cast<int>(coeffs.size()); }
  std::size_t space_dim() const;
  MatrixPoly as_poly() const;
  /// L^(m), with L^(0) the identity and zero past the end.
  QMatrix coeff(int m) const;
};

struct RttReport {
  Rational max_defect;
  int monomials_checked = 0;
  int samples = 0;
  bool zero() const { return max_defect.is_zero(); }
};

/// R12 L1(u1) L2(u2) - L2(u2) L1(u1) R12 as a polynomial identity: the
/// residual (times a monomial clearing the Laurent part) is sampled on the
/// grid u1s x u2s and interpolated exactly, so the check is a proof once the
/// grid exceeds the degree bounds. For a truncated Lax operator only the
/// monomials unaffected by the cut are compared.
RttReport rtt_residual(const MatrixPoly &r, const LaxRep &lax,
                       const std::vector<Rational> &u1s,
                       const std::vector<Rational> &u2s);
/// Same on a grid just large enough.
RttReport rtt_residual(const MatrixPoly &r, const LaxRep &lax);
/// The residual polynomial by direct multiplication (used to cross-check).
MatrixPoly rtt_polynomial(const MatrixPoly &r, const LaxRep &lax);

inline constexpr std::size_t kDefaultDimensionBudget = 256;

/// L_{0n}^(m) for a single-site Lax operator on N sites.
SiteOperatorFamily<QMatrix> lax_site_family(const LaxRep &lax, int sites,
                                            std::size_t budget =
                                                kDefaultDimensionBudget);
/// T = L_{0N} ... L_{01}, truncated at `order`.
AlphaSeries<QMatrix> monodromy_coproduct(const LaxRep &lax, int sites,
                                         int order,
                                         std::size_t budget =
                                             kDefaultDimensionBudget);

/// Coefficients t^(k) = tr_0 T^(k), k = 0..order.
std::vector<QMatrix> transfer_coefficients(const AlphaSeries<QMatrix> &t,
                                           std::size_t n);
/// Largest entry of any [t^(k), t^(l)].
Rational transfer_commute_residual(std::size_t n, int sites, int order);

/// [L^(n+1)_ij, L^(m)_kl] - [L^(n)_ij, L^(m+1)_kl] - L^(m)_kj L^(n)_il
///   + L^(n)_kj L^(m)_il, with L^(0)_ij = delta_ij. Indices are 0-based.
QMatrix yangian_relation_residual(const LaxRep &t, int n, int m, int i, int j,
                                  int k, int l);
/// Worst residual over all n + m <= max_sum and all index tuples.
Rational yangian_relations_sweep(const LaxRep &t, int max_sum);

/// Q^(m)_ab blocks of log T, m = 1..order.
struct QGenerators {
  std::size_t aux_dim;
  std::vector<QMatrix> q; ///< full-space Q^(1..order)
  QMatrix block(int m, int a, int b) const;
};
QGenerators q_generators(const AlphaSeries<QMatrix> &t, std::size_t n);

/// The commutation relations of the Q generators: the first two families,
/// then the third under two readings of its cubic terms.
std::vector<NamedDefect> q_relations(const QGenerators &g);

/// Coproduct, counit, coassociativity and antipode checks for the
/// fundamental Lax operator.
std::vector<NamedDefect> hopf_checks(std::size_t n);

/// Coproducts of L^(m) through nested < on quantum sites, the same for the
/// Q generators through pre-Lie/tridendriform forms, and the swap identity
/// x<y = y>x for operators on distinct sites.
std::vector<NamedDefect> coproduct_checks(const LaxRep &lax, int sites);

} // namespace magnus
