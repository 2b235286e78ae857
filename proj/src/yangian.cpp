#include "magnus/yangian.hpp"

#include <algorithm>
#include <set>

namespace magnus {

namespace {

Rational power_of(const Rational &u, int e) {
  if (e >= 0)
    return pow(u, static_cast<unsigned>(e));
  if (u.is_zero())
    throw SingularError("Laurent term evaluated at zero");
  return Rational(1) / pow(u, static_cast<unsigned>(-e));
}

Rational worst(const QMatrix &m) { return m.max_abs_exact(); }

void keep_worst(Rational &acc, const QMatrix &m) {
  const Rational v = worst(m);
  if (acc < v)
    acc = v;
}

/// One-variable polynomial moved to variable `var` of a two-variable one.
MatrixPoly lift(const MatrixPoly &p, int var) {
  MatrixPoly r(2, p.dim());
  for (const auto &[e, c] : p.terms())
    r += var == 0 ? MatrixPoly::monomial(2, c, e.first, 0)
                  : MatrixPoly::monomial(2, c, 0, e.first);
  return r;
}

QMatrix delta_block(int a, int b, std::size_t dim) {
  return a == b ? QMatrix::identity(dim) : QMatrix(dim, dim);
}

/// x placed on quantum site `site` of `sites` factors.
QMatrix on_site(const QMatrix &x, int site, int sites, std::size_t n) {
  return embed(x, {site - 1}, sites, n);
}

SiteSequence<QMatrix> quantum_sequence(const QMatrix &x, int sites,
                                       std::size_t n) {
  const std::size_t q = tensor_dim(n, static_cast<std::size_t>(sites));
  SiteSequence<QMatrix> s(sites, QMatrix(q, q));
  for (int i = 1; i <= sites; ++i)
    s[i] = on_site(x, i, sites, n);
  return s;
}

} // namespace

MatrixPoly::MatrixPoly(int vars, std::size_t dim) : vars_(vars), dim_(dim) {
  if (vars != 1 && vars != 2)
    throw DimensionMismatch("spectral polynomials take one or two variables");
}

MatrixPoly MatrixPoly::monomial(int vars, const QMatrix &c, int e1, int e2) {
  if (!c.square())
    throw DimensionMismatch("coefficients must be square");
  MatrixPoly p(vars, c.rows());
  p.add({e1, vars == 2 ? e2 : 0}, c);
  return p;
}

QMatrix MatrixPoly::coefficient(int e1, int e2) const {
  auto it = terms_.find({e1, e2});
  return it == terms_.end() ? QMatrix(dim_, dim_) : it->second;
}

MatrixPoly::Exponents MatrixPoly::min_exponents() const {
  if (terms_.empty())
    return {0, 0};
  Exponents r = terms_.begin()->first;
  for (const auto &[e, c] : terms_)
    r = {std::min(r.first, e.first), std::min(r.second, e.second)};
  return r;
}

MatrixPoly::Exponents MatrixPoly::max_exponents() const {
  if (terms_.empty())
    return {0, 0};
  Exponents r = terms_.begin()->first;
  for (const auto &[e, c] : terms_)
    r = {std::max(r.first, e.first), std::max(r.second, e.second)};
  return r;
}

int MatrixPoly::max_total_degree() const {
  int best = 0;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    if (first || e.first + e.second > best)
      best = e.first + e.second;
    first = false;
  }
  return best;
}

QMatrix MatrixPoly::evaluate(const Rational &u1, const Rational &u2) const {
  QMatrix r(dim_, dim_);
  for (const auto &[e, c] : terms_)
    r += (power_of(u1, e.first) * power_of(u2, e.second)) * c;
  return r;
}

MatrixPoly MatrixPoly::embedded(const std::vector<int> &slots, int total,
                                std::size_t local_dim) const {
  MatrixPoly r(vars_, tensor_dim(local_dim, static_cast<std::size_t>(total)));
  for (const auto &[e, c] : terms_)
    r.add(e, embed(c, slots, total, local_dim));
  return r;
}

void MatrixPoly::check(const MatrixPoly &o) const {
  if (vars_ != o.vars_ || dim_ != o.dim_)
    throw DimensionMismatch("spectral polynomials in different spaces");
}

void MatrixPoly::add(Exponents e, const QMatrix &c) {
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

MatrixPoly &MatrixPoly::operator+=(const MatrixPoly &o) {
  check(o);
  for (const auto &[e, c] : o.terms_)
    add(e, c);
  return *this;
}

MatrixPoly operator-(const MatrixPoly &a, const MatrixPoly &b) {
  a.check(b);
  MatrixPoly r = a;
  for (const auto &[e, c] : b.terms_)
    r.add(e, -c);
  return r;
}

MatrixPoly operator*(const MatrixPoly &a, const MatrixPoly &b) {
  a.check(b);
  MatrixPoly r(a.vars_, a.dim_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_)
      r.add({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return r;
}

std::string MatrixPoly::to_string() const {
  if (terms_.empty())
    return "0";
  std::string s;
  for (const auto &[e, c] : terms_) {
    if (!s.empty())
      s += " + ";
    s += c.to_string();
    if (e.first)
      s += " u1^" + std::to_string(e.first);
    if (e.second)
      s += " u2^" + std::to_string(e.second);
  }
  return s;
}

MatrixPoly yangian_r(std::size_t n) {
  const QMatrix id = QMatrix::identity(n * n);
  return MatrixPoly::monomial(2, id, 1, 0) + MatrixPoly::monomial(2, -id, 0, 1) +
         MatrixPoly::monomial(2, permutation_op(n), 0, 0);
}

MatrixPoly yangian_r_difference(std::size_t n) {
  return MatrixPoly::monomial(1, QMatrix::identity(n * n), 1) +
         MatrixPoly::monomial(1, permutation_op(n), 0);
}

MatrixPoly classical_r(std::size_t n) {
  return MatrixPoly::monomial(1, permutation_op(n), -1);
}

namespace {

QMatrix r_at(const MatrixPoly &r, const Rational &a, const Rational &b) {
  return r.vars() == 2 ? r.evaluate(a, b) : r.evaluate(a - b);
}

} // namespace

QMatrix ybe_residual(const MatrixPoly &r, std::size_t n, const Rational &u1,
                     const Rational &u2, const Rational &u3) {
  if (r.dim() != n * n)
    throw DimensionMismatch("R must act on two factors of dimension " +
                            std::to_string(n));
  const QMatrix r12 = embed(r_at(r, u1, u2), {0, 1}, 3, n);
  const QMatrix r13 = embed(r_at(r, u1, u3), {0, 2}, 3, n);
  const QMatrix r23 = embed(r_at(r, u2, u3), {1, 2}, 3, n);
  return r12 * r13 * r23 - r23 * r13 * r12;
}

QMatrix classical_ybe_residual(const MatrixPoly &r, std::size_t n,
                               const Rational &u1, const Rational &u2,
                               const Rational &u3) {
  const QMatrix r12 = embed(r_at(r, u1, u2), {0, 1}, 3, n);
  const QMatrix r13 = embed(r_at(r, u1, u3), {0, 2}, 3, n);
  const QMatrix r23 = embed(r_at(r, u2, u3), {1, 2}, 3, n);
  return commutator(r12, r13) + commutator(r12 + r13, r23);
}

LaxRep LaxRep::fundamental(std::size_t n) {
  return {n, 1, {permutation_op(n)}, true};
}

LaxRep LaxRep::geometric(std::size_t n, int truncation) {
  LaxRep l{n, 1, {}, false};
  const QMatrix p = permutation_op(n);
  QMatrix acc = QMatrix::identity(n * n);
  for (int m = 1; m <= truncation; ++m) {
    acc = acc * p;
    l.coeffs.push_back(acc);
  }
  return l;
}

LaxRep LaxRep::from_series(const AlphaSeries<QMatrix> &t, std::size_t n,
                           int slots, bool exact) {
  LaxRep l{n, slots, {}, exact};
  for (int m = 1; m <= t.order(); ++m)
    l.coeffs.push_back(t[m]);
  // Trailing zeros carry no information about the degree.
  while (exact && !l.coeffs.empty() && l.coeffs.back().is_zero())
    l.coeffs.pop_back();
  return l;
}

std::size_t LaxRep::space_dim() const {
  return tensor_dim(aux_dim, static_cast<std::size_t>(slots) + 1);
}

MatrixPoly LaxRep::as_poly() const {
  MatrixPoly p = MatrixPoly::monomial(1, QMatrix::identity(space_dim()), 0);
  for (int m = 1; m <= degree(); ++m)
    p += MatrixPoly::monomial(1, coeffs[m - 1], -m);
  return p;
}

QMatrix LaxRep::coeff(int m) const {
  if (m == 0)
    return QMatrix::identity(space_dim());
  if (m <= degree())
    return coeffs[m - 1];
  if (!exact)
    throw TruncationMismatch("coefficient " + std::to_string(m) +
                             " lies beyond the truncation");
  return QMatrix(space_dim(), space_dim());
}

namespace {

struct RttSetup {
  int total;
  std::vector<int> lax1_slots, lax2_slots;
};

RttSetup rtt_setup(const MatrixPoly &r, const LaxRep &lax) {
  if (r.vars() != 2)
    throw Unsupported("the RTT check takes a two-parameter R-matrix");
  if (r.dim() != lax.aux_dim * lax.aux_dim)
    throw DimensionMismatch("R and the Lax operator use different auxiliary "
                            "dimensions");
  RttSetup s;
  s.total = lax.slots + 2;
  s.lax1_slots = {0};
  s.lax2_slots = {1};
  for (int q = 0; q < lax.slots; ++q) {
    s.lax1_slots.push_back(2 + q);
    s.lax2_slots.push_back(2 + q);
  }
  return s;
}

QMatrix vandermonde_inverse(const std::vector<Rational> &x) {
  const std::size_t k = x.size();
  QMatrix v(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      v(i, j) = pow(x[i], static_cast<unsigned>(j));
  return v.inverse();
}

void check_points(const std::vector<Rational> &pts, std::size_t needed,
                  bool avoid_zero, const char *which) {
  if (pts.size() < needed)
    throw InsufficientSamples(std::string(which) + " needs " +
                              std::to_string(needed) + " sample points, got " +
                              std::to_string(pts.size()));
  std::set<Rational> seen;
  for (std::size_t i = 0; i < needed; ++i) {
    if (!seen.insert(pts[i]).second)
      throw InsufficientSamples(std::string(which) +
                                " sample points must be distinct");
    if (avoid_zero && pts[i].is_zero())
      throw InsufficientSamples(std::string(which) +
                                " sample points must avoid the pole at 0");
  }
}

} // namespace

MatrixPoly rtt_polynomial(const MatrixPoly &r, const LaxRep &lax) {
  const RttSetup s = rtt_setup(r, lax);
  const std::size_t n = lax.aux_dim;
  const MatrixPoly r12 = r.embedded({0, 1}, s.total, n);
  const MatrixPoly l1 = lift(lax.as_poly(), 0).embedded(s.lax1_slots, s.total, n);
  const MatrixPoly l2 = lift(lax.as_poly(), 1).embedded(s.lax2_slots, s.total, n);
  return r12 * l1 * l2 - l2 * l1 * r12;
}

RttReport rtt_residual(const MatrixPoly &r, const LaxRep &lax,
                       const std::vector<Rational> &u1s,
                       const std::vector<Rational> &u2s) {
  const RttSetup s = rtt_setup(r, lax);
  const std::size_t n = lax.aux_dim;
  const int deg = lax.degree();
  const auto rmin = r.min_exponents(), rmax = r.max_exponents();
  const int lo1 = rmin.first - deg, hi1 = rmax.first;
  const int lo2 = rmin.second - deg, hi2 = rmax.second;
  const auto k1 = static_cast<std::size_t>(hi1 - lo1 + 1);
  const auto k2 = static_cast<std::size_t>(hi2 - lo2 + 1);
  check_points(u1s, k1, lo1 < 0, "u1");
  check_points(u2s, k2, lo2 < 0, "u2");

  const MatrixPoly lax_poly = lax.as_poly();
  const std::size_t big = tensor_dim(n, static_cast<std::size_t>(s.total));
  std::vector<QMatrix> grid(k1 * k2, QMatrix(big, big));
  const long cells = static_cast<long>(k1 * k2);
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < cells; ++c) {
    const std::size_t i = static_cast<std::size_t>(c) / k2;
    const std::size_t j = static_cast<std::size_t>(c) % k2;
    const Rational &u1 = u1s[i], &u2 = u2s[j];
    const QMatrix r12 = embed(r.evaluate(u1, u2), {0, 1}, s.total, n);
    const QMatrix l1 = embed(lax_poly.evaluate(u1), s.lax1_slots, s.total, n);
    const QMatrix l2 = embed(lax_poly.evaluate(u2), s.lax2_slots, s.total, n);
    // Clearing factor u1^{-lo1} u2^{-lo2} makes the residual polynomial.
    const Rational clear = power_of(u1, -lo1) * power_of(u2, -lo2);
    grid[c] = clear * (r12 * l1 * l2 - l2 * l1 * r12);
  }

  const std::vector<Rational> p1(u1s.begin(), u1s.begin() + k1);
  const std::vector<Rational> p2(u2s.begin(), u2s.begin() + k2);
  const QMatrix v1 = vandermonde_inverse(p1), v2 = vandermonde_inverse(p2);
  // Interpolate in u2 for every u1 sample, then in u1.
  std::vector<QMatrix> half(k1 * k2, QMatrix(big, big));
  for (std::size_t i = 0; i < k1; ++i)
    for (std::size_t b = 0; b < k2; ++b) {
      QMatrix acc(big, big);
      for (std::size_t j = 0; j < k2; ++j)
        if (!v2(b, j).is_zero())
          acc += v2(b, j) * grid[i * k2 + j];
      half[i * k2 + b] = acc;
    }

  RttReport rep;
  rep.samples = static_cast<int>(k1 * k2);
  const int threshold = r.max_total_degree() - (deg + 1);
  for (std::size_t a = 0; a < k1; ++a)
    for (std::size_t b = 0; b < k2; ++b) {
      const int e1 = static_cast<int>(a) + lo1, e2 = static_cast<int>(b) + lo2;
      if (!lax.exact && e1 + e2 <= threshold)
        continue;
      QMatrix coef(big, big);
      for (std::size_t i = 0; i < k1; ++i)
        if (!v1(a, i).is_zero())
          coef += v1(a, i) * half[i * k2 + b];
      keep_worst(rep.max_defect, coef);
      ++rep.monomials_checked;
    }
  return rep;
}

RttReport rtt_residual(const MatrixPoly &r, const LaxRep &lax) {
  const auto rmin = r.min_exponents(), rmax = r.max_exponents();
  const int k1 = rmax.first - rmin.first + lax.degree() + 1;
  const int k2 = rmax.second - rmin.second + lax.degree() + 1;
  std::vector<Rational> u1s, u2s;
  for (int i = 0; i < k1; ++i)
    u1s.emplace_back(i + 2);
  for (int j = 0; j < k2; ++j)
    u2s.push_back(Rational(2 * j + 1, 3));
  return rtt_residual(r, lax, u1s, u2s);
}

SiteOperatorFamily<QMatrix> lax_site_family(const LaxRep &lax, int sites,
                                            std::size_t budget) {
  if (lax.slots != 1)
    throw Unsupported("monodromies are built from single-site Lax operators");
  if (sites < 0)
    throw SiteOutOfRange("negative site count");
  const std::size_t n = lax.aux_dim;
  const std::size_t dim = tensor_dim(n, static_cast<std::size_t>(sites) + 1);
  if (dim > budget)
    throw DimensionBudgetExceeded(
        "space of dimension " + std::to_string(dim) + " exceeds the budget " +
        std::to_string(budget));
  SiteOperatorFamily<QMatrix> fam(sites, QMatrix(dim, dim), Direction::Forward);
  for (int site = 1; site <= sites; ++site)
    for (int m = 1; m <= lax.degree(); ++m)
      fam.set(site, m, embed(lax.coeffs[m - 1], {0, site}, sites + 1, n));
  return fam;
}

AlphaSeries<QMatrix> monodromy_coproduct(const LaxRep &lax, int sites,
                                         int order, std::size_t budget) {
  return monodromy_direct(lax_site_family(lax, sites, budget), order);
}

std::vector<QMatrix> transfer_coefficients(const AlphaSeries<QMatrix> &t,
                                           std::size_t n) {
  std::vector<QMatrix> out;
  for (int k = 0; k <= t.order(); ++k)
    out.push_back(partial_trace_slot0(t[k], n));
  return out;
}

Rational transfer_commute_residual(std::size_t n, int sites, int order) {
  const auto t = transfer_coefficients(
      monodromy_coproduct(LaxRep::fundamental(n), sites, order), n);
  Rational acc;
  for (std::size_t k = 0; k < t.size(); ++k)
    for (std::size_t l = k + 1; l < t.size(); ++l)
      keep_worst(acc, commutator(t[k], t[l]));
  return acc;
}

QMatrix yangian_relation_residual(const LaxRep &t, int n, int m, int i, int j,
                                  int k, int l) {
  const std::size_t q = t.space_dim() / t.aux_dim;
  auto L = [&](int p, int a, int b) {
    return p == 0 ? delta_block(a, b, q)
                  : slot0_block(t.coeff(p), t.aux_dim, a, b);
  };
  return commutator(L(n + 1, i, j), L(m, k, l)) -
         commutator(L(n, i, j), L(m + 1, k, l)) - L(m, k, j) * L(n, i, l) +
         L(n, k, j) * L(m, i, l);
}

Rational yangian_relations_sweep(const LaxRep &t, int max_sum) {
  const int d = static_cast<int>(t.aux_dim);
  std::vector<std::array<int, 6>> jobs;
  for (int n = 0; n <= max_sum; ++n)
    for (int m = 0; n + m <= max_sum; ++m)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l)
              jobs.push_back({n, m, i, j, k, l});
  std::vector<Rational> res(jobs.size());
  const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < count; ++c) {
    const auto &x = jobs[c];
    res[c] = worst(yangian_relation_residual(t, x[0], x[1], x[2], x[3], x[4],
                                             x[5]));
  }
  Rational acc;
  for (const auto &r : res)
    if (acc < r)
      acc = r;
  return acc;
}

QMatrix QGenerators::block(int m, int a, int b) const {
  return slot0_block(q.at(m - 1), aux_dim, a, b);
}

QGenerators q_generators(const AlphaSeries<QMatrix> &t, std::size_t n) {
  const auto log = series_log(t);
  QGenerators g{n, {}};
  for (int m = 1; m <= log.order(); ++m)
    g.q.push_back(log[m]);
  return g;
}

std::vector<NamedDefect> q_relations(const QGenerators &g) {
  if (g.q.size() < 3)
    throw TruncationMismatch("the Q relations need generators through order 3");
  const int d = static_cast<int>(g.aux_dim);
  const std::size_t q = g.q[0].rows() / g.aux_dim;
  auto Q = [&](int m, int a, int b) { return g.block(m, a, b); };
  auto delta = [](int a, int b) { return a == b ? Rational(1) : Rational(0); };
  auto cube = [&](int a, int b) {
    QMatrix c(q, q);
    for (int x = 0; x < d; ++x)
      for (int y = 0; y < d; ++y)
        c += Q(1, a, x) * Q(1, x, y) * Q(1, y, b);
    return c;
  };
  Rational r1, r2, r3a, r3b;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          keep_worst(r1, commutator(Q(1, i, j), Q(1, k, l)) -
                             (delta(i, l) * Q(1, k, j) - delta(k, j) * Q(1, i, l)));
          keep_worst(r2, commutator(Q(1, i, j), Q(2, k, l)) -
                             (delta(i, l) * Q(2, k, j) - delta(k, j) * Q(2, i, l)));
          QMatrix sq_il(q, q), sq_kj(q, q);
          for (int x = 0; x < d; ++x) {
            sq_il += Q(1, i, x) * Q(1, x, l);
            sq_kj += Q(1, k, x) * Q(1, x, j);
          }
          const QMatrix base =
              commutator(Q(2, i, j), Q(2, k, l)) -
              (delta(i, l) * Q(3, k, j) - delta(k, j) * Q(3, i, l) -
               Rational(1, 4) * (Q(1, k, j) * sq_il) +
               Rational(1, 4) * (sq_kj * Q(1, i, l)));
          const QMatrix c_il = cube(i, l), c_kj = cube(k, j);
          keep_worst(r3a, base - Rational(1, 12) * (delta(k, j) * c_il -
                                                    delta(i, l) * c_kj));
          keep_worst(r3b, base - (Rational(1, 12) * delta(k, j) * c_il -
                                  delta(i, l) * c_kj));
        }
  return {{"[Q1_ij, Q1_kl] exchange relation", r1, true},
          {"[Q1_ij, Q2_kl] exchange relation", r2, true},
          {"[Q2_ij, Q2_kl] with 1/12 on both cubic terms", r3a, false},
          {"[Q2_ij, Q2_kl] with 1/12 on the first cubic term only", r3b, false}};
}

namespace {

/// Coproduct of Q2_ab over `sites` sites from the two-site rule applied
/// pairwise; `high_first` puts the first tensor factor on the higher site.
QMatrix q2_coproduct(const QGenerators &single, int sites, int a, int b,
                     bool high_first) {
  const std::size_t n = single.aux_dim;
  const int d = static_cast<int>(n);
  const std::size_t q = tensor_dim(n, static_cast<std::size_t>(sites));
  QMatrix acc(q, q);
  for (int s = 1; s <= sites; ++s)
    acc += on_site(single.block(2, a, b), s, sites, n);
  for (int hi = 1; hi <= sites; ++hi)
    for (int lo = 1; lo < hi; ++lo) {
      const int first = high_first ? hi : lo, second = high_first ? lo : hi;
      for (int x = 0; x < d; ++x)
        acc += Rational(1, 2) *
               (on_site(single.block(1, a, x), first, sites, n) *
                    on_site(single.block(1, x, b), second, sites, n) -
                on_site(single.block(1, x, b), first, sites, n) *
                    on_site(single.block(1, a, x), second, sites, n));
    }
  return acc;
}

} // namespace

std::vector<NamedDefect> hopf_checks(std::size_t n) {
  const LaxRep lax = LaxRep::fundamental(n);
  const int d = static_cast<int>(n);
  const QGenerators single = q_generators(monodromy_coproduct(lax, 1, 3), n);
  std::vector<NamedDefect> out;

  for (int sites : {2, 3}) {
    const QGenerators g = q_generators(monodromy_coproduct(lax, sites, 3), n);
    Rational c1, c2, c2_other;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const std::size_t q = tensor_dim(n, static_cast<std::size_t>(sites));
        QMatrix sum1(q, q);
        for (int s = 1; s <= sites; ++s)
          sum1 += on_site(single.block(1, a, b), s, sites, n);
        keep_worst(c1, g.block(1, a, b) - sum1);
        keep_worst(c2, g.block(2, a, b) - q2_coproduct(single, sites, a, b, true));
        keep_worst(c2_other,
                   g.block(2, a, b) - q2_coproduct(single, sites, a, b, false));
      }
    const std::string tag = " on " + std::to_string(sites) + " sites";
    out.push_back({"coproduct of Q1" + tag, c1, true});
    out.push_back(
        {"coproduct of Q2, first factor on the higher site" + tag, c2, true});
    out.push_back({"coproduct of Q2, first factor on the lower site" + tag,
                   c2_other, false});
  }

  {
    const auto t = monodromy_coproduct(lax, 2, 3);
    const QMatrix p01 = embed(permutation_op(n), {0, 1}, 3, n);
    const QMatrix p02 = embed(permutation_op(n), {0, 2}, 3, n);
    const QMatrix expect = Rational(-1, 2) * (p01 * p01) -
                           Rational(1, 2) * (p02 * p02) +
                           Rational(1, 2) * commutator(p02, p01);
    out.push_back({"log T at order 2 equals -P01^2/2 - P02^2/2 + [P02,P01]/2",
                   worst(series_log(t)[2] - expect), true});
  }

  {
    const auto t0 = monodromy_coproduct(lax, 0, 3);
    out.push_back({"counit: the empty monodromy is the identity",
                   worst(t0[0] - QMatrix::identity(n)) +
                       worst(series_log(t0)[1]) + worst(series_log(t0)[2]),
                   true});
  }

  {
    const auto fam = lax_site_family(lax, 3);
    const auto l1 = fam.site_series(1, 3), l2 = fam.site_series(2, 3),
               l3 = fam.site_series(3, 3);
    const auto diff = series_mul(l3, series_mul(l2, l1)) -
                      series_mul(series_mul(l3, l2), l1);
    Rational acc;
    for (int k = 0; k <= 3; ++k)
      keep_worst(acc, diff[k]);
    out.push_back({"coassociativity of the three-site coproduct", acc, true});
  }

  {
    // S(L(u)) = L(u)^{-1}, read blockwise; S reverses products.
    AlphaSeries<QMatrix> l = AlphaSeries<QMatrix>::linear(3, lax.coeffs[0]);
    const auto inv = series_inverse(l);
    auto S = [&](int m, int a, int b) { return slot0_block(inv[m], n, a, b); };
    Rational s1, s2, s2_printed;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        keep_worst(s1, S(1, a, b) + single.block(1, a, b));
        QMatrix sq2 = S(2, a, b);
        QMatrix lie(n, n);
        for (int c = 0; c < d; ++c) {
          sq2 -= Rational(1, 2) * (S(1, c, b) * S(1, a, c));
          lie += commutator(single.block(1, a, c), single.block(1, c, b));
        }
        keep_worst(s2, sq2 - (-single.block(2, a, b) + Rational(1, 2) * lie));
        keep_worst(s2_printed, sq2 - (-single.block(2, a, b) +
                                      Rational(1, 2) * single.block(1, a, b)));
      }
    out.push_back({"antipode S(Q1) = -Q1", s1, true});
    out.push_back({"antipode S(Q2) = -Q2 + 1/2 sum_c [Q1_ac, Q1_cb]", s2, true});
    out.push_back({"antipode S(Q2) = -Q2 + 1/2 Q1", s2_printed, false});
  }
  return out;
}

std::vector<NamedDefect> coproduct_checks(const LaxRep &lax, int sites) {
  const std::size_t n = lax.aux_dim;
  const int d = static_cast<int>(n);
  const auto t = monodromy_coproduct(lax, sites, 3);
  const auto logt = series_log(t);
  const QGenerators single =
      q_generators(monodromy_coproduct(lax, 1, 3), n);
  const RotaBaxterOp R = RotaBaxterOp::partial_sum();
  auto L = [&](int m, int a, int b) {
    return quantum_sequence(slot0_block(lax.coeff(m), n, a, b), sites, n);
  };
  auto Qs = [&](int m, int a, int b) {
    return quantum_sequence(single.block(m, a, b), sites, n);
  };
  auto prec = [&](const SiteSequence<QMatrix> &x, const SiteSequence<QMatrix> &y) {
    return trid(TridOp::Prec, x, y, R);
  };
  auto succ = [&](const SiteSequence<QMatrix> &x, const SiteSequence<QMatrix> &y) {
    return trid(TridOp::Succ, x, y, R);
  };

  Rational i1, i2, i3, swap, q1, q2;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      auto block = [&](const QMatrix &m) { return slot0_block(m, n, a, b); };
      keep_worst(i1, block(t[1]) - L(1, a, b).total());

      SiteSequence<QMatrix> two = L(2, a, b);
      SiteSequence<QMatrix> three = L(3, a, b);
      for (int c = 0; c < d; ++c) {
        two += prec(L(1, a, c), L(1, c, b));
        three += prec(L(2, a, c), L(1, c, b)) + prec(L(1, a, c), L(2, c, b));
        for (int e = 0; e < d; ++e)
          three += prec(L(1, a, e), prec(L(1, e, c), L(1, c, b)));
      }
      keep_worst(i2, block(t[2]) - two.total());
      keep_worst(i3, block(t[3]) - three.total());

      keep_worst(q1, block(logt[1]) - Qs(1, a, b).total());
      SiteSequence<QMatrix> qtwo = Qs(2, a, b);
      for (int c = 0; c < d; ++c)
        qtwo -= Rational(1, 2) *
                (succ(Qs(1, a, c), Qs(1, c, b)) - prec(Qs(1, a, c), Qs(1, c, b)));
      keep_worst(q2, block(logt[2]) - qtwo.total());

      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          const auto diff = prec(L(1, a, b), L(1, c, e)) - succ(L(1, c, e), L(1, a, b));
          for (int s = 1; s <= sites; ++s)
            keep_worst(swap, diff[s]);
        }
    }

  // The same Q coproducts assembled on the full space with the pre-Lie
  // product, through order 3.
  Rational full;
  {
    const int total = sites + 1;
    const std::size_t dim = tensor_dim(n, static_cast<std::size_t>(total));
    auto seq = [&](const QMatrix &x) {
      SiteSequence<QMatrix> s(sites, QMatrix(dim, dim));
      for (int k = 1; k <= sites; ++k)
        s[k] = embed(x, {0, k}, total, n);
      return s;
    };
    const auto a1 = seq(single.q[0]), a2 = seq(single.q[1]), a3 = seq(single.q[2]);
    auto p = [](const SiteSequence<QMatrix> &x, const SiteSequence<QMatrix> &y) {
      return prelie_left(x, y);
    };
    const auto sq = a1 * a1;
    const QMatrix o1 = a1.total();
    const QMatrix o2 = (Rational(-1, 2) * p(a1, a1) + a2 + Rational(1, 2) * sq).total();
    const QMatrix o3 =
        (Rational(1, 4) * p(p(a1, a1), a1) + Rational(1, 12) * p(a1, p(a1, a1)) -
         Rational(1, 2) * (p(a2, a1) + p(a1, a2)) -
         Rational(1, 4) * (p(sq, a1) + p(a1, sq)) + a3 +
         Rational(1, 2) * (a2 * a1 + a1 * a2) + Rational(1, 6) * (sq * a1))
            .total();
    keep_worst(full, logt[1] - o1);
    keep_worst(full, logt[2] - o2);
    keep_worst(full, logt[3] - o3);
  }

  const std::string tag = " on " + std::to_string(sites) + " sites";
  return {{"coproduct of L1 as a sum over sites" + tag, i1, true},
          {"coproduct of L2 through L1 < L1" + tag, i2, true},
          {"coproduct of L3 through nested <" + tag, i3, true},
          {"x < y = y > x for operators on distinct sites" + tag, swap, true},
          {"coproduct of Q1 as a sum over sites" + tag, q1, true},
          {"coproduct of Q2 through > and <" + tag, q2, true},
          {"pre-Lie form of log T through order 3" + tag, full, true}};
}

} // namespace magnus
