#pragma once

// Gauge transformations between two discrete problems and the double-row
// monodromy of an open chain. Everything is a truncated series in the
// expansion parameter; residuals are returned per site.

#include "magnus/expansion.hpp"

#include <vector>

namespace magnus {

template <OperatorAlgebra Op> struct GaugeProblem {
  SiteOperatorFamily<Op> fam;  ///< L_n
  SiteOperatorFamily<Op> hat;  ///< target L^_n
  Op g1;                       ///< initial value, invertible
  int order = 3;
};

template <OperatorAlgebra Op> struct SiteSolution {
  std::vector<AlphaSeries<Op>> values;    ///< entries for n = 1..N+1
  std::vector<AlphaSeries<Op>> residuals; ///< one per site n = 1..N
  bool residuals_vanish() const {
    for (const auto &r : residuals)
      if (!r.is_zero())
        return false;
    return true;
  }
};

namespace detail {

/// Products L_{n-1} ... L_1 (forward) or L_1 ... L_{n-1} (backward) for
/// n = 1..N+1, independent of the family's own direction tag.
template <OperatorAlgebra Op>
std::vector<AlphaSeries<Op>> partial_products(const SiteOperatorFamily<Op> &f,
                                              int order, Direction dir) {
  std::vector<AlphaSeries<Op>> out{
      AlphaSeries<Op>::identity(order, f.prototype())};
  for (int n = 1; n <= f.sites(); ++n) {
    const auto l = f.site_series(n, order);
    out.push_back(dir == Direction::Forward ? series_mul(l, out.back())
                                            : series_mul(out.back(), l));
  }
  return out;
}

} // namespace detail

/// G_n = T^_n G_1 T_n^{-1}, which solves G_{n+1} = L^_n G_n L_n^{-1}.
template <OperatorAlgebra Op>
SiteSolution<Op> gauge_solve(const GaugeProblem<Op> &p) {
  if (p.fam.sites() != p.hat.sites())
    throw DimensionMismatch("gauge problem families have different lengths");
  const int d = p.order;
  const auto t = detail::partial_products(p.fam, d, Direction::Forward);
  const auto th = detail::partial_products(p.hat, d, Direction::Forward);
  AlphaSeries<Op> g1(d, p.g1);
  g1[0] = p.g1;
  SiteSolution<Op> s;
  for (std::size_t n = 0; n < t.size(); ++n)
    s.values.push_back(series_mul(series_mul(th[n], g1), series_inverse(t[n])));
  for (int n = 1; n <= p.fam.sites(); ++n) {
    const auto l_inv = series_inverse(p.fam.site_series(n, d));
    s.residuals.push_back(
        s.values[n] -
        series_mul(series_mul(p.hat.site_series(n, d), s.values[n - 1]), l_inv));
  }
  return s;
}

template <OperatorAlgebra Op> struct BoundaryProblem {
  SiteOperatorFamily<Op> fam; ///< L_n, multiplied from the left
  SiteOperatorFamily<Op> hat; ///< L^_n, multiplied from the right
  AlphaSeries<Op> k;          ///< boundary operator
};

/// Double-row monodromy TT_n = T_n K T^_n with T forward and T^ backward.
template <OperatorAlgebra Op> struct DoubleRowResult {
  SiteSolution<Op> rows;
  /// TT_{N+1} against the full products computed independently.
  AlphaSeries<Op> endpoint_defect;
};

template <OperatorAlgebra Op>
DoubleRowResult<Op> double_row_monodromy(const BoundaryProblem<Op> &p) {
  if (p.fam.sites() != p.hat.sites())
    throw DimensionMismatch("boundary problem families have different lengths");
  const int d = p.k.order();
  const auto t = detail::partial_products(p.fam, d, Direction::Forward);
  const auto th = detail::partial_products(p.hat, d, Direction::Backward);
  SiteSolution<Op> r;
  for (std::size_t n = 0; n < t.size(); ++n)
    r.values.push_back(series_mul(series_mul(t[n], p.k), th[n]));
  for (int n = 1; n <= p.fam.sites(); ++n)
    r.residuals.push_back(
        r.values[n] - series_mul(series_mul(p.fam.site_series(n, d),
                                            r.values[n - 1]),
                                 p.hat.site_series(n, d)));
  auto fwd = p.fam;
  fwd.set_direction(Direction::Forward);
  auto bwd = p.hat;
  bwd.set_direction(Direction::Backward);
  auto endpoint = r.values.back() -
                  series_mul(series_mul(monodromy_direct(fwd, d), p.k),
                             monodromy_direct(bwd, d));
  return {std::move(r), std::move(endpoint)};
}

/// L^(a) = L(-a)^{-1} per site, truncated at `order`. The result runs in
/// the opposite direction.
template <OperatorAlgebra Op>
SiteOperatorFamily<Op> reflection_hat(const SiteOperatorFamily<Op> &f,
                                      int order) {
  SiteOperatorFamily<Op> r(f.sites(), f.prototype(),
                           f.direction() == Direction::Forward
                               ? Direction::Backward
                               : Direction::Forward);
  for (int n = 1; n <= f.sites(); ++n) {
    const auto inv = series_inverse(f.site_series(n, order)).negate_parameter();
    for (int m = 1; m <= order; ++m)
      r.set(n, m, inv[m]);
  }
  return r;
}

} // namespace magnus
