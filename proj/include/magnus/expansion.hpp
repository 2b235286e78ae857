#pragma once

// Discrete Dyson and Magnus expansions of a product of site operators
// L_n(a) = 1 + sum_m a^m L^(m)_n. The ordered product itself
// (monodromy_direct) is the ground truth; every other route is checked
// against it.

#include "magnus/alpha_series.hpp"
#include "magnus/rota_baxter.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace magnus {

/// Forward: T = L_N ... L_1. Backward: T = L_1 ... L_N.
enum class Direction { Forward, Backward };

inline const char *direction_name(Direction d) {
  return d == Direction::Forward ? "forward" : "backward";
}

template <OperatorAlgebra Op> class SiteOperatorFamily {
public:
  SiteOperatorFamily(int sites, const Op &prototype,
                     Direction dir = Direction::Forward)
      : sites_(sites), proto_(prototype.zero_like()), dir_(dir) {
    if (sites < 0)
      throw SiteOutOfRange("negative site count");
  }

  int sites() const { return sites_; }
  Direction direction() const { return dir_; }
  void set_direction(Direction d) { dir_ = d; }
  const Op &prototype() const { return proto_; }

  int max_degree() const {
    int m = 0;
    for (const auto &[key, v] : coeffs_)
      m = std::max(m, key.second);
    return m;
  }

  void set(int site, int degree, const Op &op) {
    if (site < 1 || site > sites_)
      throw SiteOutOfRange("site " + std::to_string(site) + " outside 1.." +
                           std::to_string(sites_));
    if (degree < 1)
      throw SiteOutOfRange("degrees start at 1");
    proto_.check_compatible(op);
    if (op.is_zero())
      coeffs_.erase({site, degree});
    else
      coeffs_.insert_or_assign({site, degree}, op);
  }

  /// L^(degree)_site, zero when absent.
  Op get(int site, int degree) const {
    auto it = coeffs_.find({site, degree});
    return it == coeffs_.end() ? proto_ : it->second;
  }
  bool has(int site, int degree) const {
    return coeffs_.count({site, degree}) > 0;
  }

  /// The sequence n -> L^(degree)_n.
  SiteSequence<Op> degree_sequence(int degree) const {
    SiteSequence<Op> s(sites_, proto_);
    for (int n = 1; n <= sites_; ++n)
      s[n] = get(n, degree);
    return s;
  }

  /// 1 + sum_m a^m L^(m)_site truncated at order.
  AlphaSeries<Op> site_series(int site, int order) const {
    AlphaSeries<Op> s = AlphaSeries<Op>::identity(order, proto_);
    for (int m = 1; m <= order; ++m)
      s[m] = get(site, m);
    return s;
  }

  /// Keep only the listed degrees.
  SiteOperatorFamily restrict_degrees(const std::vector<int> &keep) const {
    SiteOperatorFamily r(sites_, proto_, dir_);
    for (const auto &[key, v] : coeffs_)
      if (std::find(keep.begin(), keep.end(), key.second) != keep.end())
        r.coeffs_.emplace(key, v);
    return r;
  }

  /// Same operators, site order reversed (n -> N+1-n).
  SiteOperatorFamily reversed() const {
    SiteOperatorFamily r(sites_, proto_, dir_);
    for (const auto &[key, v] : coeffs_)
      r.coeffs_.emplace(std::make_pair(sites_ + 1 - key.first, key.second), v);
    return r;
  }

  template <class F> auto map(F f) const {
    using R = decltype(f(proto_));
    SiteOperatorFamily<R> r(sites_, f(proto_), dir_);
    for (const auto &[key, v] : coeffs_)
      r.set(key.first, key.second, f(v));
    return r;
  }

private:
  int sites_;
  Op proto_;
  Direction dir_;
  std::map<std::pair<int, int>, Op> coeffs_;
};

/// Linear family L_n = 1 + a P_n.
template <OperatorAlgebra Op>
SiteOperatorFamily<Op> linear_family(const SiteSequence<Op> &p,
                                     Direction dir = Direction::Forward) {
  SiteOperatorFamily<Op> f(p.size(), p.prototype(), dir);
  for (int n = 1; n <= p.size(); ++n)
    f.set(n, 1, p[n]);
  return f;
}

template <OperatorAlgebra Op>
AlphaSeries<Op> monodromy_direct(const SiteOperatorFamily<Op> &fam, int order) {
  if (order < 1)
    throw TruncationMismatch("monodromy needs order >= 1");
  AlphaSeries<Op> t = AlphaSeries<Op>::identity(order, fam.prototype());
  for (int n = 1; n <= fam.sites(); ++n) {
    const AlphaSeries<Op> l = fam.site_series(n, order);
    t = fam.direction() == Direction::Forward ? series_mul(l, t)
                                              : series_mul(t, l);
  }
  return t;
}

enum class DysonMethod { DirectSum, Tridendriform };

namespace detail {

/// All compositions (m_k, ..., m_1) of m, listed outermost first.
std::vector<std::vector<int>> compositions(int m);

template <OperatorAlgebra Op>
Op dyson_direct_forward(const SiteOperatorFamily<Op> &fam, int m, int bound) {
  // Sum over n < bound, d <= m of L^(d)_n * (terms of degree m-d below n).
  Op acc = fam.prototype();
  if (m == 0)
    return fam.prototype().identity_like();
  for (int n = 1; n < bound; ++n)
    for (int d = 1; d <= m; ++d)
      if (fam.has(n, d))
        acc = acc + fam.get(n, d) * dyson_direct_forward(fam, m - d, n);
  return acc;
}

template <OperatorAlgebra Op>
Op dyson_direct_backward(const SiteOperatorFamily<Op> &fam, int m, int bound) {
  // Words with increasing sites left to right: sum over n < bound of
  // (terms of degree m-d below n) * L^(d)_n.
  Op acc = fam.prototype();
  if (m == 0)
    return fam.prototype().identity_like();
  for (int n = 1; n < bound; ++n)
    for (int d = 1; d <= m; ++d)
      if (fam.has(n, d))
        acc = acc + dyson_direct_backward(fam, m - d, n) * fam.get(n, d);
  return acc;
}

} // namespace detail

/// T^(1..order) of the ordered product.
template <OperatorAlgebra Op>
std::vector<Op> dyson_terms(const SiteOperatorFamily<Op> &fam, int order,
                            DysonMethod method) {
  std::vector<Op> out;
  const int N = fam.sites();
  const RotaBaxterOp R = RotaBaxterOp::partial_sum();
  for (int m = 1; m <= order; ++m) {
    if (method == DysonMethod::DirectSum) {
      out.push_back(fam.direction() == Direction::Forward
                        ? detail::dyson_direct_forward(fam, m, N + 1)
                        : detail::dyson_direct_backward(fam, m, N + 1));
      continue;
    }
    Op total = fam.prototype();
    for (const auto &comp : detail::compositions(m)) {
      // comp = (m_k, ..., m_1). Forward nests to the right with <,
      // backward nests to the left with >.
      SiteSequence<Op> acc = fam.degree_sequence(comp.front());
      if (fam.direction() == Direction::Forward) {
        acc = fam.degree_sequence(comp.back());
        for (int i = static_cast<int>(comp.size()) - 2; i >= 0; --i)
          acc = trid(TridOp::Prec, fam.degree_sequence(comp[i]), acc, R);
      } else {
        for (std::size_t i = 1; i < comp.size(); ++i)
          acc = trid(TridOp::Succ, acc, fam.degree_sequence(comp[i]), R);
      }
      total = total + acc.total();
    }
    out.push_back(total);
  }
  return out;
}

/// A variant of the backward Dyson sum in which the second-innermost factor
/// carries the outer site index. Kept to report how far it is from the true
/// backward coefficients.
template <OperatorAlgebra Op>
std::vector<Op> dyson_backward_as_printed(const SiteOperatorFamily<Op> &fam,
                                          int order) {
  std::vector<Op> out;
  const int N = fam.sites();
  for (int m = 1; m <= order; ++m) {
    Op total = fam.prototype();
    for (const auto &comp : detail::compositions(m)) {
      const int k = static_cast<int>(comp.size());
      // Sites n_k < ... < n_2 < n_1; factor j uses site n_j except that the
      // factor of degree m_2 sits on n_1.
      std::vector<int> sites(k);
      std::function<void(int, int)> rec = [&](int j, int bound) {
        if (j > k) {
          Op w = fam.prototype().identity_like();
          for (int i = k; i >= 1; --i) {
            const int site = (i == 2) ? sites[0] : sites[i - 1];
            w = w * fam.get(site, comp[k - i]);
          }
          total = total + w;
          return;
        }
        for (int n = 1; n < bound; ++n) {
          sites[j - 1] = n;
          rec(j + 1, n);
        }
      };
      rec(1, N + 1);
    }
    out.push_back(total);
  }
  return out;
}

/// Pi[n][k] = sum of products T^(j1)...T^(jk) with j1+...+jk = n.
template <OperatorAlgebra Op> class PiTable {
public:
  explicit PiTable(const std::vector<Op> &t) : order_(static_cast<int>(t.size())) {
    if (t.empty())
      return;
    table_.assign(order_ + 1, std::vector<Op>(order_ + 1, t[0].zero_like()));
    for (int n = 1; n <= order_; ++n)
      table_[n][1] = t[n - 1];
    for (int k = 2; k <= order_; ++k)
      for (int n = k; n <= order_; ++n) {
        Op acc = t[0].zero_like();
        for (int m = 1; m <= n - k + 1; ++m)
          acc = acc + table_[m][1] * table_[n - m][k - 1];
        table_[n][k] = acc;
      }
  }
  int order() const { return order_; }
  const Op &operator()(int n, int k) const { return table_.at(n).at(k); }

private:
  int order_;
  std::vector<std::vector<Op>> table_;
};

template <OperatorAlgebra Op> PiTable<Op> pi_table(const std::vector<Op> &t) {
  return PiTable<Op>(t);
}

/// Q^(m) = T^(m) - sum_{k=2}^m (-1)^k Pi^(m)_k / k, the coefficients of the
/// logarithm. `sign_of_order` switches to (-1)^m in place of (-1)^k, only
/// to measure how wrong that variant is.
template <OperatorAlgebra Op>
std::vector<Op> magnus_from_dyson(const std::vector<Op> &t,
                                  bool sign_of_order = false) {
  const PiTable<Op> pi(t);
  std::vector<Op> q;
  for (int m = 1; m <= static_cast<int>(t.size()); ++m) {
    Op acc = t[m - 1];
    for (int k = 2; k <= m; ++k) {
      const int e = sign_of_order ? m : k;
      const Rational c((e % 2) ? -1 : 1, k);
      acc = acc - c * pi(m, k);
    }
    q.push_back(acc);
  }
  return q;
}

template <OperatorAlgebra Op>
AlphaSeries<Op> series_from_terms(const std::vector<Op> &terms, const Op &proto,
                                  bool unit_constant) {
  AlphaSeries<Op> s(static_cast<int>(terms.size()), proto);
  if (unit_constant)
    s[0] = proto.identity_like();
  for (std::size_t m = 0; m < terms.size(); ++m)
    s[static_cast<int>(m) + 1] = terms[m];
  return s;
}

template <OperatorAlgebra Op> struct ExpansionResult {
  std::vector<Op> t;          ///< T^(1..D)
  std::vector<Op> q;          ///< Q^(1..D)
  std::optional<PiTable<Op>> pi;
  std::string provenance;     ///< oracle, explicit, prelie, tridendriform
};

template <OperatorAlgebra Op>
ExpansionResult<Op> expand_oracle(const SiteOperatorFamily<Op> &fam, int order) {
  ExpansionResult<Op> r;
  const AlphaSeries<Op> t = monodromy_direct(fam, order);
  for (int m = 1; m <= order; ++m)
    r.t.push_back(t[m]);
  r.q = magnus_from_dyson(r.t);
  r.pi = PiTable<Op>(r.t);
  r.provenance = "oracle";
  return r;
}

enum class ClosedStyle { Explicit, PreLie };

/// One labelled summand of a closed-form Magnus coefficient.
template <OperatorAlgebra Op> struct ClosedTerm {
  int order;
  std::string group; ///< "degree-1 only", "mixed degrees 1,2", "degree 3"
  std::string label;
  Op value;
};

namespace detail {

template <OperatorAlgebra Op>
void push_term(std::vector<ClosedTerm<Op>> &out, int order,
               const std::string &group, const std::string &label,
               const Op &value) {
  out.push_back({order, group, label, value});
}

template <OperatorAlgebra Op>
std::vector<ClosedTerm<Op>> explicit_forward(const SiteOperatorFamily<Op> &f,
                                             int order) {
  std::vector<ClosedTerm<Op>> out;
  const int N = f.sites();
  const Op z = f.prototype();
  auto L = [&](int n) { return f.get(n, 1); };
  auto L2 = [&](int n) { return f.get(n, 2); };
  auto C = [](const Op &a, const Op &b) { return commutator(a, b); };
  const std::string g1 = "degree-1 only", gm = "mixed degrees 1,2";
  {
    Op s = z;
    for (int n = 1; n <= N; ++n)
      s = s + L(n);
    push_term(out, 1, g1, "sum_n L1_n", s);
  }
  if (order >= 2) {
    Op a = z, b = z, c = z;
    for (int n = 1; n <= N; ++n) {
      for (int n1 = 1; n1 < n; ++n1)
        a = a + C(L(n), L(n1));
      b = b + L(n) * L(n);
      c = c + L2(n);
    }
    push_term(out, 2, g1, "1/2 sum_{n>n1} [L1_n, L1_n1]", Rational(1, 2) * a);
    push_term(out, 2, g1, "-1/2 sum_n (L1_n)^2", Rational(-1, 2) * b);
    push_term(out, 2, std::string("degree 2"), "sum_n L2_n", c);
  }
  if (order >= 3) {
    Op nested = z, rep = z, sq = z, mix_local = z, cube = z, mix_nl = z,
       l3 = z;
    for (int n = 1; n <= N; ++n) {
      for (int n2 = 1; n2 < n; ++n2)
        for (int n1 = 1; n1 < n2; ++n1)
          nested = nested + C(L(n), C(L(n2), L(n1))) + C(C(L(n), L(n2)), L(n1));
      for (int n1 = 1; n1 < n; ++n1) {
        rep = rep + L(n1) * C(L(n1), L(n)) + C(L(n1), L(n)) * L(n);
        sq = sq + C(L(n1), L(n) * L(n)) + C(L(n1) * L(n1), L(n));
        mix_nl = mix_nl + C(L(n1), L2(n)) + C(L2(n1), L(n));
      }
      mix_local = mix_local + L(n) * L2(n) + L2(n) * L(n);
      cube = cube + L(n) * L(n) * L(n);
      l3 = l3 + f.get(n, 3);
    }
    push_term(out, 3, g1,
              "1/6 sum_{n>n2>n1} ([L1_n,[L1_n2,L1_n1]] + [[L1_n,L1_n2],L1_n1])",
              Rational(1, 6) * nested);
    push_term(out, 3, g1,
              "1/6 sum_{n>n1} (L1_n1 [L1_n1, L1_n] + [L1_n1, L1_n] L1_n)",
              Rational(1, 6) * rep);
    push_term(out, 3, g1,
              "1/6 sum_{n>n1} ([L1_n1, (L1_n)^2] + [(L1_n1)^2, L1_n])",
              Rational(1, 6) * sq);
    push_term(out, 3, gm, "-1/2 sum_n (L1_n L2_n + L2_n L1_n)",
              Rational(-1, 2) * mix_local);
    push_term(out, 3, g1, "1/3 sum_n (L1_n)^3", Rational(1, 3) * cube);
    push_term(out, 3, gm, "-1/2 sum_{n>m} ([L1_m, L2_n] + [L2_m, L1_n])",
              Rational(-1, 2) * mix_nl);
    push_term(out, 3, std::string("degree 3"), "sum_n L3_n", l3);
  }
  return out;
}

template <OperatorAlgebra Op>
std::vector<ClosedTerm<Op>> explicit_backward(const SiteOperatorFamily<Op> &f,
                                              int order) {
  std::vector<ClosedTerm<Op>> out;
  const int N = f.sites();
  const Op z = f.prototype();
  auto L = [&](int n) { return f.get(n, 1); };
  auto L2 = [&](int n) { return f.get(n, 2); };
  auto C = [](const Op &a, const Op &b) { return commutator(a, b); };
  const std::string g1 = "degree-1 only", gm = "mixed degrees 1,2";
  {
    Op s = z;
    for (int n = 1; n <= N; ++n)
      s = s + L(n);
    push_term(out, 1, g1, "sum_n L1_n", s);
  }
  if (order >= 2) {
    Op a = z, b = z, c = z;
    for (int n = 1; n <= N; ++n) {
      for (int n1 = 1; n1 < n; ++n1)
        a = a + C(L(n1), L(n));
      b = b + L(n) * L(n);
      c = c + L2(n);
    }
    push_term(out, 2, g1, "1/2 sum_{n>n1} [L1_n1, L1_n]", Rational(1, 2) * a);
    push_term(out, 2, g1, "-1/2 sum_n (L1_n)^2", Rational(-1, 2) * b);
    push_term(out, 2, std::string("degree 2"), "sum_n L2_n", c);
  }
  if (order >= 3) {
    Op nested = z, rep = z, sq = z, mix_local = z, cube = z, mix_nl = z,
       l3 = z;
    for (int n = 1; n <= N; ++n) {
      for (int m = 1; m < n; ++m)
        for (int k = 1; k < m; ++k)
          nested = nested + C(L(k), C(L(m), L(n))) + C(C(L(k), L(m)), L(n));
      for (int m = 1; m < n; ++m) {
        rep = rep + L(n) * C(L(n), L(m)) + C(L(n), L(m)) * L(m);
        sq = sq + C(L(n), L(m) * L(m)) + C(L(n) * L(n), L(m));
        mix_nl = mix_nl + C(L(n), L2(m)) + C(L2(n), L(m));
      }
      mix_local = mix_local + L(n) * L2(n) + L2(n) * L(n);
      cube = cube + L(n) * L(n) * L(n);
      l3 = l3 + f.get(n, 3);
    }
    push_term(out, 3, g1,
              "1/6 sum_{n>m>k} ([L1_k,[L1_m,L1_n]] + [[L1_k,L1_m],L1_n])",
              Rational(1, 6) * nested);
    push_term(out, 3, g1,
              "1/6 sum_{n>m} (L1_n [L1_n, L1_m] + [L1_n, L1_m] L1_m)",
              Rational(1, 6) * rep);
    push_term(out, 3, g1,
              "1/6 sum_{n>m} ([L1_n, (L1_m)^2] + [(L1_n)^2, L1_m])",
              Rational(1, 6) * sq);
    push_term(out, 3, gm, "-1/2 sum_n (L1_n L2_n + L2_n L1_n)",
              Rational(-1, 2) * mix_local);
    push_term(out, 3, g1, "1/3 sum_n (L1_n)^3", Rational(1, 3) * cube);
    push_term(out, 3, gm, "-1/2 sum_{n>m} ([L1_n, L2_m] + [L2_n, L1_m])",
              Rational(-1, 2) * mix_nl);
    push_term(out, 3, std::string("degree 3"), "sum_n L3_n", l3);
  }
  return out;
}

template <OperatorAlgebra Op>
std::vector<ClosedTerm<Op>> prelie_form(const SiteOperatorFamily<Op> &f,
                                        int order, Direction dir) {
  std::vector<ClosedTerm<Op>> out;
  const SiteSequence<Op> l1 = f.degree_sequence(1), l2 = f.degree_sequence(2),
                         l3 = f.degree_sequence(3);
  const bool fwd = dir == Direction::Forward;
  auto p = [&](const SiteSequence<Op> &a, const SiteSequence<Op> &b) {
    return fwd ? prelie_left(a, b) : prelie_right(a, b);
  };
  const std::string g1 = "degree-1 only", gm = "mixed degrees 1,2";
  const char *op = fwd ? "|>" : "<|";
  auto lbl = [&](std::string s) {
    for (std::size_t pos; (pos = s.find('@')) != std::string::npos;)
      s.replace(pos, 1, op);
    return s;
  };
  push_term(out, 1, g1, "sum_n L1_n", l1.total());
  if (order >= 2) {
    push_term(out, 2, g1, lbl("-1/2 sum_n (L1 @ L1)_n"),
              Rational(-1, 2) * p(l1, l1).total());
    push_term(out, 2, std::string("degree 2"), "sum_n L2_n", l2.total());
  }
  if (order >= 3) {
    // Forward weights 1/4 on (x.x).x and 1/12 on x.(x.x); backward swaps.
    const Rational c_left = fwd ? Rational(1, 4) : Rational(1, 12);
    const Rational c_right = fwd ? Rational(1, 12) : Rational(1, 4);
    push_term(out, 3, g1,
              c_left.str() + lbl(" sum_n ((L1 @ L1) @ L1)_n"),
              c_left * p(p(l1, l1), l1).total());
    push_term(out, 3, g1,
              c_right.str() + lbl(" sum_n (L1 @ (L1 @ L1))_n"),
              c_right * p(l1, p(l1, l1)).total());
    push_term(out, 3, gm, lbl("-1/2 sum_n ((L2 @ L1)_n + (L1 @ L2)_n)"),
              Rational(-1, 2) * (p(l2, l1) + p(l1, l2)).total());
    push_term(out, 3, std::string("degree 3"), "sum_n L3_n", l3.total());
  }
  return out;
}

} // namespace detail

/// Closed-form Magnus summands through order <= 3, labelled.
template <OperatorAlgebra Op>
std::vector<ClosedTerm<Op>> magnus_closed_terms(const SiteOperatorFamily<Op> &fam,
                                                ClosedStyle style, int order) {
  if (order > 3)
    throw Unsupported("closed forms are available through order 3 only");
  if (style == ClosedStyle::PreLie)
    return detail::prelie_form(fam, order, fam.direction());
  return fam.direction() == Direction::Forward
             ? detail::explicit_forward(fam, order)
             : detail::explicit_backward(fam, order);
}

template <OperatorAlgebra Op>
std::vector<Op> magnus_closed_form(const SiteOperatorFamily<Op> &fam,
                                   ClosedStyle style, int order) {
  std::vector<Op> q(order, fam.prototype());
  for (const auto &t : magnus_closed_terms(fam, style, order))
    q[t.order - 1] = q[t.order - 1] + t.value;
  return q;
}

/// Where a closed form disagrees with the oracle, split the defect by
/// restricting the family to degree-1 operators: the remainder then belongs
/// to the terms involving higher degrees.
template <OperatorAlgebra Op> struct ClosedFormDefect {
  int order;
  Op defect;
  Op defect_degree1_only;    ///< closed - oracle on the degree-1 part alone
  Op defect_higher_degrees;  ///< what remains
  std::vector<std::string> suspect_terms;
};

template <OperatorAlgebra Op>
std::vector<ClosedFormDefect<Op>>
closed_form_defects(const SiteOperatorFamily<Op> &fam, ClosedStyle style,
                    int order) {
  std::vector<ClosedFormDefect<Op>> out;
  const auto oracle = expand_oracle(fam, order).q;
  const auto closed = magnus_closed_form(fam, style, order);
  const auto fam1 = fam.restrict_degrees({1});
  const auto oracle1 = expand_oracle(fam1, order).q;
  const auto closed1 = magnus_closed_form(fam1, style, order);
  const auto terms = magnus_closed_terms(fam, style, order);
  for (int m = 1; m <= order; ++m) {
    ClosedFormDefect<Op> d{m, closed[m - 1] - oracle[m - 1],
                           closed1[m - 1] - oracle1[m - 1], fam.prototype(),
                           {}};
    d.defect_higher_degrees = d.defect - d.defect_degree1_only;
    for (const auto &t : terms) {
      if (t.order != m)
        continue;
      const bool pure = t.group == "degree-1 only";
      if ((pure && !d.defect_degree1_only.is_zero()) ||
          (!pure && !d.defect_higher_degrees.is_zero()))
        d.suspect_terms.push_back(t.label);
    }
    out.push_back(std::move(d));
  }
  return out;
}

/// Result of the M + aL factorization T = (1 + sum a^m sum P...P) M_N...M_1.
template <OperatorAlgebra Op> struct FactorizedResult {
  SiteSequence<Op> dressed;   ///< P_1..P_N
  Op m_product;               ///< M_N ... M_1
  std::vector<Op> q;          ///< Magnus coefficients of the bracket
  AlphaSeries<Op> residual;   ///< T_direct - exp(Q) M_N...M_1
};

/// Sites carry L_n(a) = M_n + a L_n with invertible M_n.
template <OperatorAlgebra Op>
FactorizedResult<Op> factorized_expansion(const SiteSequence<Op> &m,
                                          const SiteSequence<Op> &l, int order) {
  m.check_compatible(l);
  const int N = m.size();
  const Op one = m.prototype().identity_like();
  std::vector<Op> minv(N + 1, one);
  for (int n = 1; n <= N; ++n) {
    try {
      minv[n] = m[n].inverse();
    } catch (const SingularError &) {
      throw SingularError("M at site " + std::to_string(n) +
                          " is not invertible");
    }
  }
  // above[n] = M_N ... M_{n+1}, and its inverse.
  std::vector<Op> above(N + 2, one), above_inv(N + 2, one);
  for (int n = N - 1; n >= 0; --n) {
    above[n] = above[n + 1] * m[n + 1];
    above_inv[n] = minv[n + 1] * above_inv[n + 1];
  }
  SiteSequence<Op> dressed(N, m.prototype());
  for (int n = 1; n <= N; ++n)
    dressed[n] = above[n] * l[n] * minv[n] * above_inv[n];

  AlphaSeries<Op> t = AlphaSeries<Op>::identity(order, m.prototype());
  for (int n = 1; n <= N; ++n) {
    AlphaSeries<Op> site(order, m.prototype());
    site[0] = m[n];
    if (order >= 1)
      site[1] = l[n];
    t = series_mul(site, t);
  }
  const auto bracket = expand_oracle(linear_family(dressed), order);
  const AlphaSeries<Op> q = series_from_terms(bracket.q, m.prototype(), false);
  AlphaSeries<Op> rebuilt = series_mul_right(series_exp(q), above[0]);
  return {dressed, above[0], bracket.q, t - rebuilt};
}

} // namespace magnus
