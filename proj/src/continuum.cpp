#include "magnus/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace magnus {

static_assert(OperatorAlgebra<PolyField>);

Rational bernoulli(int n) {
  if (n < 0)
    throw Unsupported("Bernoulli numbers need n >= 0");
  // sum_{k<=m} C(m+1,k) B_k = 0 for m >= 1.
  std::vector<Rational> b{Rational(1)};
  for (int m = 1; m <= n; ++m) {
    Rational acc = 0, binom = 1; // C(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += binom * b[k];
      binom = binom * Rational(m + 1 - k, k + 1);
    }
    b.push_back(-acc / Rational(m + 1));
  }
  return b[n];
}

PolyField field_prelie(const PolyField &a, const PolyField &b,
                       const Rational &x0) {
  return prelie(RotaBaxterOp::riemann_integral(x0), PreLieSide::Left, a, b);
}

PolyField field_prec(const PolyField &a, const PolyField &b,
                     const Rational &x0) {
  return trid(TridOp::Prec, a, b, RotaBaxterOp::riemann_integral(x0));
}

namespace {

void check_order(int order, int limit) {
  if (order < 0)
    throw TruncationMismatch("order must be non-negative");
  if (order > limit)
    throw Unsupported(fmt::format("closed forms exist up to order {}, asked {}",
                                  limit, order));
}

MultiPoly field_at(const PolyField &a, int var, int vars) {
  return MultiPoly::from_field(a, var, vars);
}

MultiPoly bracket(const MultiPoly &x, const MultiPoly &y) {
  return x * y - y * x;
}

Rational poly_max_abs(const PolyField &p) {
  Rational worst = 0;
  for (const auto &[power, c] : p.terms())
    worst = std::max(worst, c.max_abs_exact());
  return worst;
}

AlphaSeries<PolyField> dyson_series(const PolyField &a, int order,
                                    const Rational &x0) {
  return series_from_terms(dyson_continuous(a, order, x0), a.zero_like(),
                           true);
}

// T(x, -alpha)^{-1} as a series: exp(-log T) after flipping the parameter.
AlphaSeries<PolyField> reflected_inverse(const AlphaSeries<PolyField> &t) {
  return series_exp(Rational(-1) * series_log(t.negate_parameter()));
}

AlphaSeries<PolyField> unit_inverse(const AlphaSeries<PolyField> &t) {
  return series_exp(Rational(-1) * series_log(t));
}

QMatrix to_exact(const DMatrix &m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(i, j) = Rational(mpq_class(m(i, j)));
  return r;
}

DMatrix scaled(double c, DMatrix m) { return m *= c; }

DMatrix evaluate_series(const AlphaSeries<PolyField> &s, double alpha,
                        double x, int upto) {
  DMatrix r(s.prototype().dim(), s.prototype().dim());
  double p = 1;
  for (int m = 0; m <= upto; ++m, p *= alpha)
    if (!s[m].is_zero())
      r += scaled(p, s[m].evaluate(x));
  return r;
}

double max_entry(const DMatrix &m) { return m.max_abs(); }

} // namespace

std::vector<PolyField> dyson_continuous(const PolyField &a, int order,
                                        const Rational &x0) {
  if (order < 0)
    throw TruncationMismatch("order must be non-negative");
  std::vector<PolyField> out;
  for (int m = 1; m <= order; ++m) {
    // A(y_{m-1}) ... A(y_0) over y_0 <= ... <= y_{m-1} <= x.
    MultiPoly f = field_at(a, m - 1, m);
    for (int v = m - 2; v >= 0; --v)
      f = f * field_at(a, v, m);
    out.push_back(simplex_integral(f, x0));
  }
  return out;
}

std::vector<PolyField> dyson_dendriform(const PolyField &a, int order,
                                        const Rational &x0) {
  if (order < 0)
    throw TruncationMismatch("order must be non-negative");
  std::vector<PolyField> out;
  PolyField nested = a;
  for (int m = 1; m <= order; ++m) {
    if (m > 1)
      nested = field_prec(a, nested, x0);
    out.push_back(nested.integrate(x0));
  }
  return out;
}

std::vector<PolyField> magnus_continuous(const PolyField &a, int order,
                                         ContinuousForm form,
                                         const Rational &x0) {
  check_order(order, 3);
  std::vector<PolyField> q;
  if (order >= 1)
    q.push_back(a.integrate(x0));
  if (form == ContinuousForm::Commutator) {
    if (order >= 2)
      q.push_back(Rational(1, 2) *
                  simplex_integral(bracket(field_at(a, 1, 2), field_at(a, 0, 2)),
                                   x0));
    if (order >= 3) {
      const MultiPoly a1 = field_at(a, 0, 3), a2 = field_at(a, 1, 3),
                      a3 = field_at(a, 2, 3);
      const MultiPoly f = bracket(a3, bracket(a2, a1)) +
                          bracket(bracket(a3, a2), a1);
      q.push_back(Rational(1, 6) * simplex_integral(f, x0));
    }
    return q;
  }
  const PolyField aa = field_prelie(a, a, x0);
  if (order >= 2)
    q.push_back(Rational(-1, 2) * aa.integrate(x0));
  if (order >= 3)
    q.push_back((Rational(1, 4) * field_prelie(aa, a, x0) +
                 Rational(1, 12) * field_prelie(a, aa, x0))
                    .integrate(x0));
  return q;
}

std::vector<PolyField> magnus_bernoulli_iterate(const PolyField &a, int depth,
                                                int order,
                                                const Rational &x0) {
  if (order < 0)
    throw TruncationMismatch("order must be non-negative");
  if (order == 0)
    return {};
  if (depth < order)
    throw InsufficientDepth(fmt::format(
        "{} iterations fix only {} orders, {} requested", depth, depth, order));
  AlphaSeries<PolyField> field(order, a);
  field[1] = a;
  std::vector<Rational> weight; // B_n / n!
  Rational fact = 1;
  for (int n = 0; n < order; ++n) {
    if (n > 0)
      fact = fact * Rational(n);
    weight.push_back(bernoulli(n) / fact);
  }
  AlphaSeries<PolyField> q(order, a);
  for (int pass = 0; pass < depth; ++pass) {
    AlphaSeries<PolyField> integrand = field, ad = field;
    for (int n = 1; n < order; ++n) {
      ad = series_mul(q, ad) - series_mul(ad, q);
      if (!weight[n].is_zero())
        integrand += weight[n] * ad;
    }
    AlphaSeries<PolyField> next(order, a);
    for (int m = 1; m <= order; ++m)
      next[m] = integrand[m].integrate(x0);
    q = next;
  }
  std::vector<PolyField> out;
  for (int m = 1; m <= order; ++m)
    out.push_back(q[m]);
  return out;
}

std::vector<PolyField> magnus_from_continuous_dyson(const PolyField &a,
                                                    int order,
                                                    const Rational &x0) {
  return magnus_from_dyson(dyson_continuous(a, order, x0));
}

SiteOperatorFamily<QMatrix> discretize(const PolyField &a, const Rational &x0,
                                       const Rational &delta, int sites) {
  if (delta <= Rational(0))
    throw Unsupported("step must be positive");
  SiteOperatorFamily<QMatrix> f(sites, QMatrix(a.dim(), a.dim()));
  for (int n = 1; n <= sites; ++n)
    f.set(n, 1, delta * a.evaluate(x0 + Rational(n - 1) * delta));
  return f;
}

SiteOperatorFamily<DMatrix> discretize(const PolyField &a, double x0,
                                       double delta, int sites) {
  if (!(delta > 0))
    throw Unsupported("step must be positive");
  SiteOperatorFamily<DMatrix> f(sites, DMatrix(a.dim(), a.dim()));
  for (int n = 1; n <= sites; ++n)
    f.set(n, 1, scaled(delta, a.evaluate(x0 + (n - 1) * delta)));
  return f;
}

int step_count(double x0, double x, double delta) {
  if (!(delta > 0))
    throw Unsupported("step must be positive");
  // Guard against 1/0.1 landing at 9.999...
  return static_cast<int>(std::floor((x - x0) / delta + 1e-9));
}

std::optional<double> ConvergenceTable::estimated_rate(int order) const {
  std::vector<double> tail;
  for (auto it = rows.rbegin(); it != rows.rend() && tail.size() < 2; ++it) {
    const auto &r = it->rate.at(order - 1);
    if (!r)
      return std::nullopt;
    tail.push_back(*r);
  }
  if (tail.size() < 2)
    return std::nullopt;
  return (tail[0] + tail[1]) / 2;
}

std::string ConvergenceTable::csv() const {
  std::string out = "delta";
  for (int m = 1; m <= 3; ++m)
    out += fmt::format(",err_q{}", m);
  for (int m = 1; m <= 3; ++m)
    out += fmt::format(",rate_q{}", m);
  out += "\n";
  for (const auto &r : rows) {
    out += fmt::format("{:.10g}", r.delta);
    for (int m = 0; m < 3; ++m)
      out += m < orders ? fmt::format(",{:.6e}", r.error[m]) : ",";
    for (int m = 0; m < 3; ++m)
      out += m < orders && r.rate[m] ? fmt::format(",{:.4f}", *r.rate[m]) : ",";
    out += "\n";
  }
  return out;
}

std::vector<double> halving_deltas(double start, int halvings) {
  std::vector<double> d;
  for (int i = 0; i <= halvings; ++i)
    d.push_back(start / std::ldexp(1.0, i));
  return d;
}

ConvergenceTable convergence_study(const PolyField &a,
                                   const std::vector<double> &deltas,
                                   int orders, double x0, double x) {
  if (deltas.size() < 3)
    throw Unsupported("a convergence study needs at least 3 step sizes");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] < deltas[i - 1]))
      throw Unsupported("step sizes must be strictly decreasing");
  check_order(orders, 3);
  if (orders < 1)
    throw TruncationMismatch("need at least one Magnus order");

  const auto exact = magnus_continuous(a, orders, ContinuousForm::Commutator,
                                       Rational(mpq_class(x0)));
  std::vector<DMatrix> target;
  for (const auto &q : exact)
    target.push_back(q.evaluate(x));

  ConvergenceTable table{x0, x, orders, {}};
  table.rows.resize(deltas.size());
  const long count = static_cast<long>(deltas.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const double d = deltas[i];
    const auto fam = discretize(a, x0, d, step_count(x0, x, d));
    const auto r = expand_oracle(fam, orders);
    ConvergenceRow row{d, {}, {}};
    for (int m = 0; m < orders; ++m)
      row.error.push_back(max_entry(r.q[m] - target[m]));
    table.rows[i] = row;
  }
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    for (int m = 0; m < orders; ++m) {
      std::optional<double> rate;
      if (i > 0) {
        const double prev = table.rows[i - 1].error[m],
                     cur = table.rows[i].error[m];
        if (prev > 0 && cur > 0)
          rate = std::log2(prev / cur) /
                 std::log2(table.rows[i - 1].delta / table.rows[i].delta);
      }
      table.rows[i].rate.push_back(rate);
    }
  return table;
}

DMatrix expm(const DMatrix &m) {
  if (!m.square())
    throw DimensionMismatch("exponential of a non-square matrix");
  // Scale until the norm is below 1/2, sum 20 Taylor terms, then square.
  double norm = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      row += std::fabs(m(i, j));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  const DMatrix a = scaled(std::ldexp(1.0, -squarings), m);
  DMatrix sum = a.identity_like(), term = sum;
  for (int k = 1; k <= 20; ++k) {
    term = scaled(1.0 / k, term * a);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s)
    sum = sum * sum;
  return sum;
}

double open_evolution_residual(const PolyField &a, const DMatrix &k,
                               double alpha, double x, double delta,
                               OpenMethod method, int order) {
  if (!(delta > 0))
    throw Unsupported("step must be positive");
  if (method == OpenMethod::Exponential) {
    if (a.degree() > 0)
      throw Unsupported("closed-form exponentials need a constant field");
    const DMatrix a0 = a.evaluate(0.0);
    auto tt = [&](double xi) {
      return expm(scaled(alpha * xi, a0)) * k *
             expm(scaled(-alpha * xi, a0)).inverse();
    };
    // Central difference: the closed form is smooth and cheap to evaluate
    // on both sides, and the O(delta^2) error keeps the check meaningful at
    // practical step sizes.
    const DMatrix t0 = tt(x);
    const DMatrix lhs = scaled(0.5 / delta, tt(x + delta) - tt(x - delta));
    return max_entry(lhs - scaled(alpha, a0 * t0 + t0 * a0));
  }
  const auto t = dyson_series(a, order, 0);
  const auto tt = series_mul(series_mul_right(t, PolyField::constant(
                                                     to_exact(k))),
                             reflected_inverse(t));
  // Against the order-(D-1) truncation on the right so that both sides carry
  // the same powers of alpha.
  const DMatrix now = evaluate_series(tt, alpha, x, order);
  const DMatrix lhs =
      scaled(1.0 / delta, evaluate_series(tt, alpha, x + delta, order) - now);
  const DMatrix prev = evaluate_series(tt, alpha, x, order - 1);
  const DMatrix ax = a.evaluate(x);
  return max_entry(lhs - scaled(alpha, ax * prev + prev * ax));
}

double gauge_evolution_residual(const PolyField &a, const PolyField &a_hat,
                                const DMatrix &g0, double alpha, double x,
                                double delta, int order) {
  if (!(delta > 0))
    throw Unsupported("step must be positive");
  const auto g =
      series_mul(series_mul_right(dyson_series(a_hat, order, 0),
                                  PolyField::constant(to_exact(g0))),
                 unit_inverse(dyson_series(a, order, 0)));
  const DMatrix now = evaluate_series(g, alpha, x, order);
  const DMatrix lhs =
      scaled(1.0 / delta, evaluate_series(g, alpha, x + delta, order) - now);
  const DMatrix prev = evaluate_series(g, alpha, x, order - 1);
  return max_entry(lhs - scaled(alpha, a_hat.evaluate(x) * prev -
                                           prev * a.evaluate(x)));
}

Rational gauge_series_residual(const PolyField &a, const PolyField &a_hat,
                               const QMatrix &g0, int order) {
  const auto g =
      series_mul(series_mul_right(dyson_series(a_hat, order, 0),
                                  PolyField::constant(g0)),
                 unit_inverse(dyson_series(a, order, 0)));
  Rational worst = 0;
  for (int m = 1; m <= order; ++m)
    worst = std::max(worst, poly_max_abs(g[m].derivative() -
                                         (a_hat * g[m - 1] - g[m - 1] * a)));
  return worst;
}

Rational open_series_residual(const PolyField &a, const QMatrix &k,
                              int order) {
  const auto t = dyson_series(a, order, 0);
  const auto tt = series_mul(series_mul_right(t, PolyField::constant(k)),
                             reflected_inverse(t));
  Rational worst = 0;
  for (int m = 1; m <= order; ++m)
    worst = std::max(worst, poly_max_abs(tt[m].derivative() -
                                         (a * tt[m - 1] + tt[m - 1] * a)));
  return worst;
}

} // namespace magnus
