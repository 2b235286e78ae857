#pragma once

// Continuous fields A(x) given as matrix polynomials: the Magnus expansion of
// the evolution dT/dx = a A T computed three ways, the Dyson terms two ways,
// and the bridge back to site operators through left-endpoint sampling.
// Exact rational arithmetic throughout except for the convergence study and
// the finite-difference evolution residuals, which run in double precision.

#include "magnus/expansion.hpp"
#include "magnus/poly_field.hpp"
#include "magnus/rota_baxter.hpp"

#include <optional>
#include <vector>

namespace magnus {

class InsufficientDepth : public Error {
public:
  using Error::Error;
};

/// B_n with B_1 = -1/2, from z/(e^z - 1).
Rational bernoulli(int n);

/// (A |> B)(x) = [int_{x0}^x A, B(x)].
PolyField field_prelie(const PolyField &a, const PolyField &b,
                       const Rational &x0 = 0);
/// (A < B)(x) = A(x) int_{x0}^x B.
PolyField field_prec(const PolyField &a, const PolyField &b,
                     const Rational &x0 = 0);

/// T^(m)(x), m = 1..order, as iterated integrals over the ordered simplex.
std::vector<PolyField> dyson_continuous(const PolyField &a, int order,
                                        const Rational &x0 = 0);
/// The same terms as int (A < (A < ... (A < A))).
std::vector<PolyField> dyson_dendriform(const PolyField &a, int order,
                                        const Rational &x0 = 0);

enum class ContinuousForm { Commutator, PreLie };

/// Q^(m)(x), m = 1..order (order <= 3), either from nested commutator
/// integrals or from the pre-Lie product.
std::vector<PolyField> magnus_continuous(const PolyField &a, int order,
                                         ContinuousForm form =
                                             ContinuousForm::Commutator,
                                         const Rational &x0 = 0);

/// Picard iteration of Q(x) = int sum_n B_n/n! ad^n_{Q(s)} A(s) ds in the
/// alpha grading. Each pass fixes one more order, so depth >= order.
std::vector<PolyField> magnus_bernoulli_iterate(const PolyField &a, int depth,
                                                int order,
                                                const Rational &x0 = 0);

/// Q^(m) = log of the Dyson series, for any order.
std::vector<PolyField> magnus_from_continuous_dyson(const PolyField &a,
                                                    int order,
                                                    const Rational &x0 = 0);

/// N sites with L^(1)_n = delta A(x0 + (n-1) delta).
SiteOperatorFamily<QMatrix> discretize(const PolyField &a, const Rational &x0,
                                       const Rational &delta, int sites);
SiteOperatorFamily<DMatrix> discretize(const PolyField &a, double x0,
                                       double delta, int sites);
/// Number of whole steps of size delta in [x0, x].
int step_count(double x0, double x, double delta);

struct ConvergenceRow {
  double delta;
  std::vector<double> error;                ///< per Magnus order 1..orders
  std::vector<std::optional<double>> rate;  ///< log2 ratio to the previous row
};

struct ConvergenceTable {
  double x0 = 0, x = 1;
  int orders = 3;
  std::vector<ConvergenceRow> rows;

  /// Mean of the rates over the last two halvings; empty when undefined.
  std::optional<double> estimated_rate(int order) const;
  /// Header plus one line per row, blank cells for undefined rates.
  std::string csv() const;
};

/// Max-entry error of the discrete Q^(m) against the exact continuous
/// Q^(m)(x), for each delta. Rows are independent and computed in parallel.
ConvergenceTable convergence_study(const PolyField &a,
                                   const std::vector<double> &deltas,
                                   int orders = 3, double x0 = 0,
                                   double x = 1);

/// Halvings of a starting step: d, d/2, ..., d/2^halvings.
std::vector<double> halving_deltas(double start, int halvings);

/// Matrix exponential by scaling and squaring with a Taylor core.
DMatrix expm(const DMatrix &m);

enum class OpenMethod {
  /// Closed-form exponentials; needs a constant field.
  Exponential,
  /// The alpha series of T K T^{-1}(-alpha) truncated at `order`.
  TruncatedSeries
};

/// Difference quotient of TT minus a (A TT + TT A)(x), max-entry norm, where
/// TT = T(x,a) K T^{-1}(x,-a). The exponential method takes a central
/// difference; the series method a forward one, so its residual is first
/// order in delta.
double open_evolution_residual(const PolyField &a, const DMatrix &k,
                               double alpha, double x, double delta,
                               OpenMethod method, int order = 3);

/// Same for G = T_hat G0 T^{-1} against a (A_hat G - G A), with both
/// evolutions as truncated series.
double gauge_evolution_residual(const PolyField &a, const PolyField &a_hat,
                                const DMatrix &g0, double alpha, double x,
                                double delta, int order = 3);

/// Exact alpha-series checks: dG_m/dx - (A_hat G_{m-1} - G_{m-1} A) and
/// dTT_m/dx - (A TT_{m-1} + TT_{m-1} A) for m <= order; largest
/// coefficient of the residual.
Rational gauge_series_residual(const PolyField &a, const PolyField &a_hat,
                               const QMatrix &g0, int order);
Rational open_series_residual(const PolyField &a, const QMatrix &k,
                              int order);

} // namespace magnus
