#include "magnus/suites.hpp"

#include "magnus/boundary.hpp"
#include "magnus/brace.hpp"
#include "magnus/continuum.hpp"
#include "magnus/random.hpp"
#include "magnus/spec_parse.hpp"
#include "magnus/yangian.hpp"

#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <type_traits>

namespace magnus {

namespace {

using Job = std::function<std::vector<CaseRecord>()>;

// Streams keep the samples of different suites apart while letting related
// suites (dyson and magnus) share their families.
constexpr std::uint64_t kFamilyStream = 0;
constexpr std::uint64_t kFieldStream = 100000;
constexpr std::uint64_t kScalarStream = 200000;
constexpr std::uint64_t kMiscStream = 300000;

struct Plan {
  std::string suite;
  const SuiteOptions &opts;
  std::vector<Job> jobs;

  std::string id(std::string_view tag) const {
    return fmt::format("{}-{:03d}-{}", suite, jobs.size() + 1, tag);
  }
  Rng rng(std::uint64_t stream) const {
    return Rng(derive_seed(opts.seed, stream));
  }
  void add(Job j) { jobs.push_back(std::move(j)); }
};

CaseRecord record(std::string id, std::string check, std::string backend,
                  std::string params, Defect d, bool informational = false) {
  CaseRecord r;
  r.id = std::move(id);
  r.check = std::move(check);
  r.backend = std::move(backend);
  r.params = std::move(params);
  r.defect = std::move(d);
  r.informational = informational;
  return r;
}

CaseRecord verdict(std::string id, std::string check, std::string backend,
                   std::string params, Defect d, bool ok) {
  CaseRecord r = record(std::move(id), std::move(check), std::move(backend),
                        std::move(params), std::move(d));
  r.verdict = ok;
  return r;
}

std::vector<CaseRecord> run_jobs(const std::vector<Job> &jobs,
                                 const std::vector<std::string> &ids) {
  std::vector<std::vector<CaseRecord>> out(jobs.size());
  std::vector<std::string> errors(jobs.size());
  const long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      out[i] = jobs[i]();
    } catch (const std::exception &e) {
      errors[i] = e.what();
    }
  }
  std::vector<CaseRecord> flat;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i].empty()) {
      CaseRecord r = record(ids[i], "raised: " + errors[i], "-", "",
                            Defect::approx(INFINITY));
      r.verdict = false;
      flat.push_back(std::move(r));
    }
    for (auto &r : out[i])
      flat.push_back(std::move(r));
  }
  return flat;
}

template <class Op> Op lift(const QMatrix &m) {
  if constexpr (std::is_same_v<Op, QMatrix>)
    return m;
  else
    return to_double(m);
}

template <class Op> const char *op_backend() {
  return std::is_same_v<Op, QMatrix> ? "exact" : "float";
}

template <class Op>
SiteOperatorFamily<Op> lift_family(const SiteOperatorFamily<QMatrix> &f) {
  return f.map([](const QMatrix &m) { return lift<Op>(m); });
}

template <class Op>
SiteSequence<Op> random_sequence(Rng &rng, int sites, std::size_t dim) {
  SiteSequence<Op> s(sites, lift<Op>(QMatrix(dim, dim)));
  for (int n = 1; n <= sites; ++n)
    s[n] = lift<Op>(rng.rational_matrix(dim, dim, 5, 3));
  return s;
}

PolyField random_field(Rng &rng, std::size_t dim, int max_degree = 3) {
  PolyField f(dim);
  const int deg = static_cast<int>(rng.integer(0, max_degree));
  for (int k = 0; k <= deg; ++k)
    f += PolyField::monomial(rng.rational_matrix(dim, dim, 4, 3), k);
  return f;
}

std::vector<int> random_degrees(Rng &rng) {
  const long mask = rng.integer(1, 7);
  std::vector<int> d;
  for (int k = 0; k < 3; ++k)
    if (mask & (1L << k))
      d.push_back(k + 1);
  return d;
}

std::string join(const std::vector<int> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

struct FamilyCase {
  SiteOperatorFamily<QMatrix> fam;
  std::string params;
};

// The i-th sampled family; shared by the expansion suites.
FamilyCase sample_family(const Plan &p, int i, int order) {
  Rng rng = p.rng(kFamilyStream + i);
  const int sites =
      p.opts.sites.value_or(static_cast<int>(rng.integer(1, 5)));
  const std::size_t dim = p.opts.dim.value_or(2);
  const auto degrees = random_degrees(rng);
  const Direction dir = p.opts.direction.value_or(
      i % 2 ? Direction::Backward : Direction::Forward);
  SiteOperatorFamily<QMatrix> f(sites, QMatrix(dim, dim), dir);
  for (int n = 1; n <= sites; ++n)
    for (int d : degrees)
      f.set(n, d, rng.int_matrix(dim, dim, 3));
  return {f, fmt::format("N={} dim={} degrees={} dir={} order={}", sites, dim,
                         join(degrees), direction_name(dir), order)};
}

// ---------------------------------------------------------------- rota-baxter

template <class Op> void rota_baxter_suite(Plan &p) {
  const int samples = p.opts.samples.value_or(100);
  const int sites = p.opts.sites.value_or(5);
  const std::size_t dim = p.opts.dim.value_or(2);
  const std::string params =
      fmt::format("samples={} N={} dim={}", samples, sites, dim);
  p.add([&p, samples, sites, dim, params, id = p.id("partial-sum")] {
    Defect worst = measure(lift<Op>(QMatrix(dim, dim)));
    for (int s = 0; s < samples; ++s) {
      Rng rng = p.rng(kMiscStream + s);
      const auto a = random_sequence<Op>(rng, sites, dim);
      const auto b = random_sequence<Op>(rng, sites, dim);
      worst.absorb(measure(rb_residual(RotaBaxterOp::partial_sum(), a, b)));
    }
    return std::vector{record(id,
                              "R(a)R(b) = R(R(a)b + aR(b) + ab), strict "
                              "partial sum, weight 1",
                              op_backend<Op>(), params, worst)};
  });
  const int field_samples = p.opts.samples ? *p.opts.samples / 5 + 1 : 20;
  p.add([&p, dim, field_samples, id = p.id("integral")] {
    Defect worst = Defect::exact();
    for (int s = 0; s < field_samples; ++s) {
      Rng rng = p.rng(kFieldStream + s);
      const auto a = random_field(rng, dim), b = random_field(rng, dim);
      const Rational lower = rng.rational(2, 3);
      worst.absorb(
          measure(rb_residual(RotaBaxterOp::riemann_integral(lower), a, b)));
    }
    return std::vector{record(
        id, "R(a)R(b) = R(R(a)b + aR(b)), integral from x0, weight 0", "exact",
        fmt::format("samples={} dim={} degree<=3", field_samples, dim),
        worst)};
  });
}

// -------------------------------------------------------------- tridendriform

template <class Op> void tridendriform_suite(Plan &p) {
  const int samples = p.opts.samples.value_or(50);
  const int sites = p.opts.sites.value_or(4);
  const std::size_t dim = p.opts.dim.value_or(2);
  for (std::size_t k = 0; k < kTridendriformIdentities.size(); ++k)
    p.add([&p, k, samples, sites, dim, id = p.id("sum")] {
      Defect worst = measure(lift<Op>(QMatrix(dim, dim)));
      for (int s = 0; s < samples; ++s) {
        Rng rng = p.rng(kMiscStream + s);
        const auto a = random_sequence<Op>(rng, sites, dim);
        const auto b = random_sequence<Op>(rng, sites, dim);
        const auto c = random_sequence<Op>(rng, sites, dim);
        worst.absorb(measure(
            check_tridendriform(a, b, c, RotaBaxterOp::partial_sum())[k]));
      }
      return std::vector{record(
          id, std::string(kTridendriformIdentities[k]) + ", partial sums",
          op_backend<Op>(), fmt::format("triples={} N={} dim={}", samples,
                                        sites, dim),
          worst)};
    });
  for (std::size_t k = 0; k < kTridendriformIdentities.size(); ++k)
    p.add([&p, k, samples, dim, id = p.id("integral")] {
      Defect worst = Defect::exact();
      for (int s = 0; s < samples; ++s) {
        Rng rng = p.rng(kFieldStream + s);
        const auto a = random_field(rng, dim), b = random_field(rng, dim),
                   c = random_field(rng, dim);
        worst.absorb(measure(check_tridendriform(
            a, b, c, RotaBaxterOp::riemann_integral())[k]));
      }
      return std::vector{record(
          id, std::string(kTridendriformIdentities[k]) + ", integrals",
          "exact", fmt::format("triples={} dim={}", samples, dim), worst)};
    });
  p.add([&p, samples, sites, dim, id = p.id("swapped")] {
    Defect worst = measure(lift<Op>(QMatrix(dim, dim)));
    for (int s = 0; s < samples; ++s) {
      Rng rng = p.rng(kMiscStream + s);
      const auto a = random_sequence<Op>(rng, sites, dim);
      const auto b = random_sequence<Op>(rng, sites, dim);
      const auto c = random_sequence<Op>(rng, sites, dim);
      worst.absorb(
          measure(swapped_second_axiom(a, b, c, RotaBaxterOp::partial_sum())));
    }
    return std::vector{record(id, "(a<b)>c = a>(b<c), reported only",
                              op_backend<Op>(),
                              fmt::format("triples={} N={} dim={}", samples,
                                          sites, dim),
                              worst, true)};
  });
}

// --------------------------------------------------------------------- prelie

template <class Op> void prelie_suite(Plan &p) {
  const int samples = p.opts.samples.value_or(50);
  const int sites = p.opts.sites.value_or(4);
  const std::size_t dim = p.opts.dim.value_or(2);
  const std::string params =
      fmt::format("triples={} N={} dim={}", samples, sites, dim);
  struct Variant {
    PreLieSide side;
    const char *check;
  };
  for (const Variant v :
       {Variant{PreLieSide::Left, "left pre-Lie identity, a|>b = [R(a),b] + ab"},
        Variant{PreLieSide::Right,
                "right pre-Lie identity, a<|b = [a,R(b)] + ab"}})
    p.add([&p, v, samples, sites, dim, params, id = p.id("sum")] {
      Defect worst = measure(lift<Op>(QMatrix(dim, dim)));
      for (int s = 0; s < samples; ++s) {
        Rng rng = p.rng(kMiscStream + s);
        const auto a = random_sequence<Op>(rng, sites, dim);
        const auto b = random_sequence<Op>(rng, sites, dim);
        const auto c = random_sequence<Op>(rng, sites, dim);
        worst.absorb(
            measure(check_prelie(v.side, a, b, c, RotaBaxterOp::partial_sum())));
      }
      return std::vector{
          record(id, v.check, op_backend<Op>(), params, worst)};
    });
  p.add([&p, samples, sites, dim, params, id = p.id("jacobi")] {
    Defect worst = measure(lift<Op>(QMatrix(dim, dim)));
    for (int s = 0; s < samples; ++s) {
      Rng rng = p.rng(kMiscStream + s);
      const auto a = random_sequence<Op>(rng, sites, dim);
      const auto b = random_sequence<Op>(rng, sites, dim);
      const auto c = random_sequence<Op>(rng, sites, dim);
      auto br = [](const SiteSequence<Op> &x, const SiteSequence<Op> &y) {
        return prelie_left(x, y) - prelie_left(y, x);
      };
      worst.absorb(measure(br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))));
    }
    return std::vector{record(id, "Jacobi identity for a|>b - b|>a",
                              op_backend<Op>(), params, worst)};
  });
  p.add([&p, samples, dim, id = p.id("integral")] {
    Defect worst = Defect::exact();
    for (int s = 0; s < samples; ++s) {
      Rng rng = p.rng(kFieldStream + s);
      const auto a = random_field(rng, dim), b = random_field(rng, dim),
                 c = random_field(rng, dim);
      worst.absorb(measure(check_prelie(PreLieSide::Left, a, b, c,
                                        RotaBaxterOp::riemann_integral())));
    }
    return std::vector{record(
        id, "left pre-Lie identity, (A|>B)(x) = [int_0^x A, B(x)]", "exact",
        fmt::format("triples={} dim={}", samples, dim), worst)};
  });
}

// ---------------------------------------------------------------------- dyson

template <class Op> void dyson_suite(Plan &p) {
  const int samples = p.opts.samples.value_or(25);
  const int order = p.opts.order.value_or(4);
  for (int i = 0; i < samples; ++i)
    p.add([&p, i, order, id = p.id("family")] {
      const auto fc = sample_family(p, i, order);
      const auto fam = lift_family<Op>(fc.fam);
      const auto t = monodromy_direct(fam, order);
      std::vector<CaseRecord> out;
      for (const auto method :
           {DysonMethod::DirectSum, DysonMethod::Tridendriform}) {
        const auto terms = dyson_terms(fam, order, method);
        Defect d = measure(fam.prototype());
        for (int m = 1; m <= order; ++m)
          d.absorb(measure(terms[m - 1] - t[m]));
        out.push_back(record(
            id + (method == DysonMethod::DirectSum ? "-sum" : "-nested"),
            method == DysonMethod::DirectSum
                ? "iterated site sums = direct monodromy"
                : "nested tridendriform products = direct monodromy",
            op_backend<Op>(), fc.params, d));
      }
      if (fam.direction() == Direction::Backward && order >= 2) {
        const auto printed = dyson_backward_as_printed(fam, order);
        Defect d = measure(fam.prototype());
        for (int m = 1; m <= order; ++m)
          d.absorb(measure(printed[m - 1] - t[m]));
        out.push_back(record(id + "-printed",
                             "backward sum with the last two factors on one "
                             "site, reported only",
                             op_backend<Op>(), fc.params, d, true));
      }
      return out;
    });
  for (const Direction dir : {Direction::Forward, Direction::Backward})
    p.add([order, dir, id = p.id("free")] {
      FamilySpec spec;
      spec.kind = FamilyKind::Free;
      spec.sites = 3;
      spec.degrees = {1, 2};
      spec.dir = dir;
      const auto fam = build_free_family(spec);
      const auto t = monodromy_direct(fam, order);
      Defect d = Defect::exact();
      for (const auto method :
           {DysonMethod::DirectSum, DysonMethod::Tridendriform}) {
        const auto terms = dyson_terms(fam, order, method);
        for (int m = 1; m <= order; ++m)
          d.absorb(measure(terms[m - 1] - t[m]));
      }
      return std::vector{record(
          id, "both Dyson forms = direct monodromy on free letters", "free",
          fmt::format("N=3 degrees=1,2 dir={} order={}", direction_name(dir),
                      order),
          d)};
    });
}

// --------------------------------------------------------------------- magnus

template <class Op> void magnus_suite(Plan &p) {
  const int samples = p.opts.samples.value_or(25);
  const int order = p.opts.order.value_or(4);
  const int closed_order = std::min(order, 3);
  for (int i = 0; i < samples; ++i)
    p.add([&p, i, order, closed_order, id = p.id("family")] {
      const auto fc = sample_family(p, i, order);
      const auto fam = lift_family<Op>(fc.fam);
      const auto oracle = expand_oracle(fam, order);
      const auto direct = monodromy_direct(fam, order);
      std::vector<CaseRecord> out;
      const auto back = series_exp(
          series_from_terms(oracle.q, fam.prototype(), false));
      out.push_back(record(id + "-roundtrip",
                           "exp of the Magnus series = direct monodromy",
                           op_backend<Op>(), fc.params,
                           measure(back - direct)));
      auto closed_defect = [&](ClosedStyle style) {
        const auto q = magnus_closed_form(fam, style, closed_order);
        Defect d = measure(fam.prototype());
        for (int m = 1; m <= closed_order; ++m)
          d.absorb(measure(q[m - 1] - oracle.q[m - 1]));
        return d;
      };
      out.push_back(record(id + "-prelie",
                           "pre-Lie closed form = logarithm, orders 1..3",
                           op_backend<Op>(), fc.params,
                           closed_defect(ClosedStyle::PreLie)));
      // The explicit transcription is informational: a defect there names
      // the suspect summands without failing the suite.
      std::string suspects;
      for (const auto &d :
           closed_form_defects(fam, ClosedStyle::Explicit, closed_order))
        for (const auto &s : d.suspect_terms)
          suspects += (suspects.empty() ? "" : "; ") + s;
      out.push_back(record(
          id + "-explicit",
          suspects.empty()
              ? "explicit closed form = logarithm, orders 1..3"
              : "explicit closed form differs; suspect terms: " + suspects,
          op_backend<Op>(), fc.params, closed_defect(ClosedStyle::Explicit),
          true));
      return out;
    });
  const int scalar_samples = p.opts.samples.value_or(10);
  for (int i = 0; i < scalar_samples; ++i)
    p.add([&p, i, closed_order, id = p.id("scalar")] {
      Rng rng = p.rng(kScalarStream + i);
      const int sites =
          p.opts.sites.value_or(static_cast<int>(rng.integer(1, 5)));
      const Direction dir = i % 2 ? Direction::Backward : Direction::Forward;
      SiteOperatorFamily<QMatrix> fam(sites, QMatrix(1, 1), dir);
      const auto degrees = random_degrees(rng);
      for (int n = 1; n <= sites; ++n)
        for (int d : degrees)
          fam.set(n, d, QMatrix::from_rows({{rng.rational(4, 3)}}));
      const auto oracle = expand_oracle(fam, closed_order).q;
      Defect d = Defect::exact();
      for (auto style : {ClosedStyle::PreLie, ClosedStyle::Explicit}) {
        const auto q = magnus_closed_form(fam, style, closed_order);
        for (int m = 1; m <= closed_order; ++m)
          d.absorb(measure(q[m - 1] - oracle[m - 1]));
      }
      return std::vector{record(
          id, "scalar family: both closed forms = logarithm", "exact",
          fmt::format("N={} degrees={} dir={} order={}", sites, join(degrees),
                      direction_name(dir), closed_order),
          d)};
    });
  p.add([id = p.id("fixed")] {
    FamilySpec spec;
    spec.sites = 2;
    const auto q = expand_oracle(build_matrix_family(spec), 3).q;
    const std::vector<Rational> want{2, -1, Rational(2, 3)};
    Defect d = Defect::exact();
    for (int m = 0; m < 3; ++m)
      d.absorb(measure(q[m](0, 0) - want[m]));
    return std::vector{record(id, "L = 1 + a on two sites: Q = (2, -1, 2/3)",
                              "exact", "N=2 p=1 order=3", d)};
  });
  p.add([&p, order, id = p.id("sign")] {
    const auto fc = sample_family(p, 0, order);
    const auto t = expand_oracle(fc.fam, order).t;
    const auto right = magnus_from_dyson(t);
    const auto variant = magnus_from_dyson(t, true);
    Defect d = Defect::exact();
    for (int m = 0; m < order; ++m)
      d.absorb(measure(variant[m] - right[m]));
    return std::vector{record(id,
                              "recursion signed by the order instead of the "
                              "number of factors, reported only",
                              "exact", fc.params, d, true)};
  });
}

// ---------------------------------------------------------------------- brace

template <class Op> void brace_suite(Plan &p) {
  using Seq = SiteSequence<Op>;
  const int samples = p.opts.samples.value_or(25);
  const int depth = p.opts.order.value_or(4);
  const int sites = p.opts.sites.value_or(3);
  const std::size_t dim = p.opts.dim.value_or(2);
  const std::string params =
      fmt::format("pairs={} N={} dim={} degree<={}", samples, sites, dim, depth);
  auto algebra = [sites, dim](int d) {
    return GradedPreLie<Seq>(d, Seq(sites, lift<Op>(QMatrix(dim, dim))),
                             [](const Seq &a, const Seq &b) {
                               return prelie_left(a, b);
                             });
  };
  // Three graded elements per sample, small entries to keep sizes down.
  auto triple = [&p, sites, dim, depth, algebra](int s) {
    Rng rng = p.rng(kMiscStream + s);
    const auto alg = algebra(depth);
    std::array<typename GradedPreLie<Seq>::Element, 3> e{alg.zero(), alg.zero(),
                                                         alg.zero()};
    for (auto &x : e)
      for (int k = 1; k <= depth; ++k) {
        Seq v(sites, lift<Op>(QMatrix(dim, dim)));
        for (int n = 1; n <= sites; ++n)
          v[n] = lift<Op>(rng.rational_matrix(dim, dim, 2, 2));
        x[k] = v;
      }
    return e;
  };
  using Element = typename GradedPreLie<Seq>::Element;
  using Law = std::function<Element(const GradedPreLie<Seq> &, const Element &,
                                    const Element &, const Element &)>;
  const std::vector<std::pair<const char *, Law>> laws = {
      {"Omega(W(a)) = a",
       [](const auto &g, const auto &a, const auto &, const auto &) {
         return g.omega_map(g.w_map(a)) - a;
       }},
      {"W(Omega(a)) = a",
       [](const auto &g, const auto &a, const auto &, const auto &) {
         return g.w_map(g.omega_map(a)) - a;
       }},
      {"a o (b + c) = a o b - a + a o c",
       [](const auto &g, const auto &a, const auto &b, const auto &c) {
         return g.brace_mul(a, b + c) -
                (g.brace_mul(a, b) - a + g.brace_mul(a, c));
       }},
      {"(a o b) o c = a o (b o c)",
       [](const auto &g, const auto &a, const auto &b, const auto &c) {
         return g.brace_mul(g.brace_mul(a, b), c) -
                g.brace_mul(a, g.brace_mul(b, c));
       }},
      {"W(a) o W(b) = W(C(a,b)), C the BCH series",
       [](const auto &g, const auto &a, const auto &b, const auto &) {
         return g.brace_mul(g.w_map(a), g.w_map(b)) - g.w_map(g.bch(a, b));
       }},
  };
  for (const auto &[check, law] : laws)
    p.add([samples, depth, algebra, triple, law, params, check = check,
           id = p.id("law")] {
      const auto alg = algebra(depth);
      Defect worst = measure(alg.zero()[1]);
      for (int s = 0; s < samples; ++s) {
        const auto e = triple(s);
        const auto r = law(alg, e[0], e[1], e[2]);
        for (int k = 1; k <= depth; ++k)
          worst.absorb(measure(r[k]));
      }
      return std::vector{record(id, check, op_backend<Op>(), params, worst)};
    });
  if (depth >= 3)
    p.add([samples, algebra, triple, params, id = p.id("bch3")] {
      const auto alg = algebra(3);
      Defect worst = measure(alg.zero()[1]);
      for (int s = 0; s < samples; ++s) {
        const auto e = triple(s);
        auto cut = [&](const Element &x) {
          Element r = alg.zero();
          for (int k = 1; k <= 3; ++k)
            r[k] = x[k];
          return r;
        };
        const auto a = cut(e[0]), b = cut(e[1]);
        const auto r = alg.bch(a, b) - alg.bch_third_order(a, b);
        for (int k = 1; k <= 3; ++k)
          worst.absorb(measure(r[k]));
      }
      return std::vector{record(
          id, "C(a,b) = a + b + [a,b]/2 + ([a,[a,b]] + [b,[b,a]])/12, degree 3",
          op_backend<Op>(), params, worst)};
    });
  p.add([&p, samples, depth, sites, dim, algebra, id = p.id("magnus")] {
    const auto alg = algebra(depth);
    Defect worst = measure(alg.zero()[1]);
    for (int s = 0; s < samples; ++s) {
      Rng rng = p.rng(kFamilyStream + s);
      Seq pseq(sites, lift<Op>(QMatrix(dim, dim)));
      for (int n = 1; n <= sites; ++n)
        pseq[n] = lift<Op>(rng.int_matrix(dim, dim, 3));
      const auto omega = alg.omega_map(alg.homogeneous(pseq, 1));
      const auto q = expand_oracle(linear_family(pseq), depth).q;
      for (int m = 1; m <= depth; ++m)
        worst.absorb(measure(omega[m].total() - q[m - 1]));
    }
    return std::vector{record(
        id, "sum over sites of Omega(aP) = Magnus series of L_n = 1 + aP_n",
        op_backend<Op>(),
        fmt::format("families={} N={} dim={} order={}", samples, sites, dim,
                    depth),
        worst)};
  });
}

// -------------------------------------------------------------------- yangian

void yangian_suite(Plan &p) {
  const std::size_t n = p.opts.dim.value_or(2);
  const int sites = p.opts.sites.value_or(3);
  const int transfer_sites = p.opts.sites.value_or(4);
  const int triples = p.opts.samples.value_or(10);
  const std::string e = "exact";

  std::vector<std::size_t> ybe_dims{2, 3};
  if (n != 2 && n != 3)
    ybe_dims.push_back(n);
  for (std::size_t d : ybe_dims)
    p.add([&p, d, triples, e, id = p.id("ybe")] {
      std::vector<CaseRecord> out;
      const std::pair<const char *, MatrixPoly> forms[] = {
          {"(u1 - u2) 1 + P", yangian_r(d)}, {"u 1 + P", yangian_r_difference(d)}};
      for (const auto &[label, r] : forms) {
        Defect worst = Defect::exact();
        for (int s = 0; s < triples; ++s) {
          Rng rng = p.rng(kMiscStream + s);
          const Rational u1 = rng.rational(9, 4), u2 = rng.rational(9, 4),
                         u3 = rng.rational(9, 4);
          worst.absorb(measure(ybe_residual(r, d, u1, u2, u3)));
        }
        out.push_back(record(id + "-" + std::to_string(out.size() + 1),
                             fmt::format("Yang-Baxter equation for R = {}", label),
                             e, fmt::format("dim={} triples={}", d, triples),
                             worst));
      }
      return out;
    });
  p.add([&p, n, triples, e, id = p.id("cybe")] {
    Defect worst = Defect::exact();
    for (int s = 0; s < triples; ++s) {
      Rng rng = p.rng(kMiscStream + s);
      const Rational u1 = rng.rational(9, 4), u2 = u1 + rng.integer(1, 5),
                     u3 = u2 + rng.integer(1, 5);
      worst.absorb(measure(classical_ybe_residual(classical_r(n), n, u1, u2, u3)));
    }
    return std::vector{record(id, "classical Yang-Baxter equation for r = P/u",
                              e, fmt::format("dim={} triples={}", n, triples),
                              worst)};
  });
  auto rtt = [n, e](std::string id, std::string check, const LaxRep &lax,
                    std::string params) {
    const auto r = rtt_residual(yangian_r(n), lax);
    return record(std::move(id), std::move(check), e,
                  fmt::format("{} samples={} monomials={}", params, r.samples,
                              r.monomials_checked),
                  measure(r.max_defect));
  };
  p.add([n, rtt, id = p.id("rtt")] {
    return std::vector{rtt(id, "RTT relation, fundamental Lax operator",
                           LaxRep::fundamental(n), fmt::format("dim={}", n))};
  });
  p.add([n, rtt, id = p.id("rtt")] {
    return std::vector{rtt(id,
                           "RTT relation, geometric Lax operator cut at u^-3, "
                           "uncut monomials",
                           LaxRep::geometric(n, 3), fmt::format("dim={}", n))};
  });
  for (int N = 1; N <= sites; ++N)
    p.add([n, N, rtt, id = p.id("rtt")] {
      const auto t = monodromy_coproduct(LaxRep::fundamental(n), N, N);
      return std::vector{rtt(id, "RTT relation, monodromy of the chain",
                             LaxRep::from_series(t, n, N, true),
                             fmt::format("dim={} N={}", n, N))};
    });
  for (int N = 1; N <= transfer_sites; ++N)
    p.add([n, N, e, id = p.id("transfer")] {
      return std::vector{record(id, "transfer matrix coefficients commute", e,
                                fmt::format("dim={} N={}", n, N),
                                measure(transfer_commute_residual(n, N, N)))};
    });
  for (int N = 1; N <= sites; ++N)
    p.add([n, N, e, id = p.id("relations")] {
      const auto t = monodromy_coproduct(LaxRep::fundamental(n), N, N);
      return std::vector{record(
          id, "Yangian exchange relations for n + m <= 3", e,
          fmt::format("dim={} N={}", n, N),
          measure(yangian_relations_sweep(LaxRep::from_series(t, n, N, true),
                                          3)))};
    });
  auto named = [e](const std::string &id, const std::vector<NamedDefect> &v,
                   const std::string &params) {
    std::vector<CaseRecord> out;
    for (std::size_t i = 0; i < v.size(); ++i)
      out.push_back(record(fmt::format("{}-{}", id, i + 1),
                           v[i].asserted ? v[i].name
                                         : v[i].name + ", reported only",
                           e, params, measure(v[i].size), !v[i].asserted));
    return out;
  };
  for (int N = 2; N <= std::max(2, sites); ++N)
    p.add([n, N, named, id = p.id("q")] {
      const auto t = monodromy_coproduct(LaxRep::fundamental(n), N, 3);
      return named(id, q_relations(q_generators(t, n)),
                   fmt::format("dim={} N={}", n, N));
    });
  p.add([n, named, id = p.id("hopf")] {
    return named(id, hopf_checks(n), fmt::format("dim={}", n));
  });
  for (int N = 2; N <= std::max(3, sites); ++N) {
    p.add([n, N, named, id = p.id("coproduct")] {
      return named(id, coproduct_checks(LaxRep::fundamental(n), N),
                   fmt::format("fundamental dim={} N={}", n, N));
    });
    p.add([n, N, named, id = p.id("coproduct")] {
      return named(id, coproduct_checks(LaxRep::geometric(n, 3), N),
                   fmt::format("geometric dim={} N={}", n, N));
    });
  }
}

// ------------------------------------------------------------------- boundary

template <class Op> void boundary_suite(Plan &p) {
  const int samples = p.opts.samples.value_or(25);
  const int order = p.opts.order.value_or(3);
  for (int i = 0; i < samples; ++i)
    p.add([&p, i, order, id = p.id("problem")] {
      Rng rng = p.rng(kMiscStream + i);
      const int sites =
          p.opts.sites.value_or(static_cast<int>(rng.integer(1, 5)));
      const std::size_t dim = p.opts.dim.value_or(2);
      auto family = [&](Direction dir) {
        SiteOperatorFamily<QMatrix> f(sites, QMatrix(dim, dim), dir);
        const auto degrees = random_degrees(rng);
        for (int n = 1; n <= sites; ++n)
          for (int d : degrees)
            if (d <= order)
              f.set(n, d, rng.int_matrix(dim, dim, 2));
        return f;
      };
      const auto fam = lift_family<Op>(family(Direction::Forward));
      const auto hat = lift_family<Op>(family(Direction::Forward));
      const Op g1 = lift<Op>(rng.invertible_matrix(dim, 3));
      const bool reflect = i % 2 == 1;
      const std::string params =
          fmt::format("N={} dim={} order={} hat={}", sites, dim, order,
                      reflect ? "reflection" : "random");
      std::vector<CaseRecord> out;

      const auto g = gauge_solve(GaugeProblem<Op>{fam, hat, g1, order});
      out.push_back(record(id + "-gauge",
                           "G_{n+1} = L^_n G_n L_n^{-1} along the chain",
                           op_backend<Op>(), params, measure(g.residuals)));
      auto bwd = hat;
      bwd.set_direction(Direction::Forward);
      AlphaSeries<Op> g1s(order, g1);
      g1s[0] = g1;
      const auto closed = series_mul(series_mul(monodromy_direct(bwd, order), g1s),
                                     series_inverse(monodromy_direct(fam, order)));
      out.push_back(record(id + "-gauge-end",
                           "G_{N+1} = T^_{N+1} G_1 T_{N+1}^{-1}",
                           op_backend<Op>(), params,
                           measure(g.values.back() - closed)));

      AlphaSeries<Op> k(order, fam.prototype());
      k[0] = lift<Op>(rng.invertible_matrix(dim, 3));
      for (int m = 1; m <= order; ++m)
        k[m] = lift<Op>(rng.int_matrix(dim, dim, 2));
      auto right = reflect ? reflection_hat(fam, order)
                           : lift_family<Op>(family(Direction::Backward));
      const auto dr = double_row_monodromy(BoundaryProblem<Op>{fam, right, k});
      Defect d = measure(dr.rows.residuals);
      d.absorb(measure(dr.endpoint_defect));
      out.push_back(record(id + "-double-row",
                           "TT_{n+1} = L_n TT_n L^_n and TT = T K T^",
                           op_backend<Op>(), params, d));
      if (reflect) {
        const auto that = monodromy_direct(right, order);
        const auto inv =
            series_inverse(monodromy_direct(fam, order)).negate_parameter();
        out.push_back(record(id + "-reflection",
                             "T^_{N+1}(a) = T_{N+1}(-a)^{-1}",
                             op_backend<Op>(), params, measure(that - inv)));
        const auto twice = reflection_hat(right, order);
        Defect inv_d = measure(fam.prototype());
        for (int n = 1; n <= sites; ++n)
          for (int m = 1; m <= order; ++m)
            inv_d.absorb(measure(twice.get(n, m) - fam.get(n, m)));
        out.push_back(record(id + "-involution",
                             "applying the reflection choice twice is the "
                             "identity",
                             op_backend<Op>(), params, inv_d));
      }
      return out;
    });
  p.add([order, id = p.id("lax")] {
    const auto lf = lax_site_family(LaxRep::fundamental(2), 2);
    const auto k = AlphaSeries<QMatrix>::identity(order, lf.prototype());
    const auto dr = double_row_monodromy(
        BoundaryProblem<QMatrix>{lf, reflection_hat(lf, order), k});
    Defect d = measure(dr.rows.residuals);
    d.absorb(measure(dr.endpoint_defect));
    return std::vector{record(id,
                              "double row of the fundamental Lax chain with "
                              "the reflection choice",
                              "exact", fmt::format("dim=2 N=2 order={}", order),
                              d)};
  });
}

// ------------------------------------------------------------------ continuum

void continuum_suite(Plan &p) {
  const std::size_t dim = 2;
  const QMatrix X = named_matrix("X", dim), Y = named_matrix("Y", dim);
  const PolyField field =
      PolyField::constant(X) + PolyField::monomial(Y, 1);
  const PolyField expected =
      Rational(-1, 12) * PolyField::monomial(X * Y - Y * X, 3);
  const std::string e = "exact", f = "float";
  const std::string fparams = "A(x) = X + xY, X = E12, Y = E21";

  p.add([=, id = p.id("q2")] {
    std::vector<CaseRecord> out;
    const std::pair<const char *, PolyField> methods[] = {
        {"nested commutator integrals",
         magnus_continuous(field, 2, ContinuousForm::Commutator)[1]},
        {"pre-Lie form", magnus_continuous(field, 2, ContinuousForm::PreLie)[1]},
        {"Bernoulli iteration", magnus_bernoulli_iterate(field, 2, 2)[1]}};
    for (const auto &[label, q2] : methods)
      out.push_back(record(
          fmt::format("{}-{}", id, out.size() + 1),
          fmt::format("Q2(x) = -(x^3/12)[X,Y] by {}", label), e, fparams,
          measure(q2 - expected)));
    return out;
  });
  const int samples = p.opts.samples.value_or(10);
  p.add([&p, samples, dim, e, id = p.id("forms")] {
    Defect forms = Defect::exact(), iterate = Defect::exact(),
           logdyson = Defect::exact(), dyson = Defect::exact();
    for (int s = 0; s < samples; ++s) {
      Rng rng = p.rng(kFieldStream + s);
      const auto a = random_field(rng, dim, 2);
      const Rational x0 = rng.rational(2, 2);
      const auto qc = magnus_continuous(a, 3, ContinuousForm::Commutator, x0);
      const auto qp = magnus_continuous(a, 3, ContinuousForm::PreLie, x0);
      const auto qb = magnus_bernoulli_iterate(a, 3, 3, x0);
      const auto ql = magnus_from_continuous_dyson(a, 3, x0);
      const auto d1 = dyson_continuous(a, 3, x0), d2 = dyson_dendriform(a, 3, x0);
      for (int m = 0; m < 3; ++m) {
        forms.absorb(measure(qc[m] - qp[m]));
        iterate.absorb(measure(qc[m] - qb[m]));
        logdyson.absorb(measure(qc[m] - ql[m]));
        dyson.absorb(measure(d1[m] - d2[m]));
      }
    }
    const std::string params =
        fmt::format("fields={} dim={} degree<=2 orders=1..3", samples, dim);
    return std::vector{
        record(id + "-1", "commutator integrals = pre-Lie form", e, params,
               forms),
        record(id + "-2", "commutator integrals = Bernoulli iteration", e,
               params, iterate),
        record(id + "-3", "commutator integrals = log of the Dyson series", e,
               params, logdyson),
        record(id + "-4", "iterated integrals = nested dendriform products", e,
               params, dyson)};
  });
  p.add([=, id = p.id("commuting")] {
    const PolyField a = PolyField::constant(X + Y) +
                        PolyField::monomial(Rational(3) * (X + Y), 2);
    const auto q = magnus_continuous(a, 3);
    Defect d = measure(q[1]);
    d.absorb(measure(q[2]));
    return std::vector{record(id, "commuting field: Q2 = Q3 = 0", e,
                              "A(x) = (1 + 3x^2)(X + Y)", d)};
  });
  p.add([=, id = p.id("bernoulli")] {
    Defect d = measure(bernoulli(0) - 1);
    d.absorb(measure(bernoulli(1) - Rational(-1, 2)));
    d.absorb(measure(bernoulli(2) - Rational(1, 6)));
    d.absorb(measure(bernoulli(3)));
    d.absorb(measure(bernoulli(4) - Rational(-1, 30)));
    return std::vector{record(id, "B0..B4 = 1, -1/2, 1/6, 0, -1/30", e, "", d)};
  });
  p.add([=, id = p.id("riemann")] {
    const auto fam = discretize(PolyField::constant(X + Y), Rational(0),
                                Rational(1, 8), 8);
    const auto q = expand_oracle(fam, 1).q;
    return std::vector{record(id, "constant field: discrete Q1 = (x - x0)A",
                              e, "delta=1/8 N=8", measure(q[0] - (X + Y)))};
  });
  p.add([=, id = p.id("convergence")] {
    const auto table = convergence_study(field, halving_deltas(1.0 / 8, 4), 3);
    std::vector<CaseRecord> out;
    for (int m = 1; m <= 2; ++m) {
      const auto rate = table.estimated_rate(m);
      const bool ok = rate && *rate >= 0.85 && *rate <= 1.15;
      out.push_back(verdict(
          fmt::format("{}-{}", id, m),
          fmt::format("order-{} discrete-to-continuous rate in [0.85, 1.15]", m),
          f,
          fmt::format("{}; delta=1/8..1/128; rate={}", fparams,
                      rate ? fmt::format("{:.4f}", *rate) : "undefined"),
          Defect::approx(rate ? std::fabs(*rate - 1) : INFINITY), ok));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < table.rows.size(); ++i)
      monotone &= table.rows[i].error[1] < table.rows[i - 1].error[1];
    out.push_back(verdict(fmt::format("{}-3", id),
                          "order-2 error decreases with every halving", f,
                          fparams, Defect::approx(table.rows.back().error[1]),
                          monotone));
    const auto rate3 = table.estimated_rate(3);
    out.push_back(record(
        fmt::format("{}-4", id), "order-3 rate, reported only", f,
        fmt::format("rate={}", rate3 ? fmt::format("{:.4f}", *rate3) : "undefined"),
        Defect::approx(table.rows.back().error[2]), true));
    return out;
  });
  p.add([=, id = p.id("open")] {
    const PolyField a = PolyField::constant(Rational(1, 2) * (X + Y));
    const PolyField c = PolyField::constant(X + Rational(1, 2) * Y);
    const DMatrix k = DMatrix::identity(dim);
    const double r =
        open_evolution_residual(c, k, 1.0, 1.0, 1e-4, OpenMethod::Exponential);
    const double r0 =
        open_evolution_residual(a, k, 0.0, 1.0, 1e-4, OpenMethod::Exponential);
    const DMatrix kk = to_double(QMatrix::identity(dim) + X);
    const double h1 = open_evolution_residual(field, kk, 0.1, 1.0, 1e-2,
                                              OpenMethod::TruncatedSeries);
    const double h2 = open_evolution_residual(field, kk, 0.1, 1.0, 5e-3,
                                              OpenMethod::TruncatedSeries);
    const double g1 = gauge_evolution_residual(field, a, kk, 0.1, 1.0, 1e-2);
    const double g2 = gauge_evolution_residual(field, a, kk, 0.1, 1.0, 5e-3);
    return std::vector{
        verdict(id + "-1",
                "open boundary evolution residual <= 1e-6, constant field", f,
                "A = X + Y/2, K = 1, a = 1, x = 1, delta = 1e-4",
                Defect::approx(r), r <= 1e-6),
        verdict(id + "-2", "open boundary evolution at a = 0 is exact", f,
                "A = S/2, K = 1, x = 1, delta = 1e-4", Defect::approx(r0),
                r0 == 0),
        verdict(id + "-3",
                "open boundary residual halves with the step, series field", f,
                fmt::format("{}; K = 1 + X; ratio={:.4f}", fparams, h1 / h2),
                Defect::approx(h2), std::fabs(h1 / h2 - 2) < 0.2),
        verdict(id + "-4", "gauge evolution residual halves with the step", f,
                fmt::format("{}; A^ = S/2; ratio={:.4f}", fparams, g1 / g2),
                Defect::approx(g2), std::fabs(g1 / g2 - 2) < 0.2)};
  });
  p.add([=, id = p.id("series")] {
    const PolyField ahat = PolyField::constant(X + Y);
    const QMatrix k = QMatrix::identity(dim) + X;
    return std::vector{
        record(id + "-1",
               "dG/dx = a(A^ G - G A) coefficientwise, G = T^ G0 T^{-1}", e,
               fmt::format("{}; A^ = S; order 4", fparams),
               measure(gauge_series_residual(field, ahat, k, 4))),
        record(id + "-2",
               "dTT/dx = a(A TT + TT A) coefficientwise, TT = T K T(-a)^{-1}",
               e, fmt::format("{}; K = 1 + X; order 4", fparams),
               measure(open_series_residual(field, k, 4)))};
  });
}

using Builder = std::function<void(Plan &)>;

Builder pick(Backend b, void (*exact)(Plan &), void (*flt)(Plan &)) {
  return b == Backend::Exact ? exact : flt;
}

} // namespace

const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names = {
      "rota-baxter", "tridendriform", "prelie",   "dyson",    "magnus",
      "brace",       "yangian",       "boundary", "continuum"};
  return names;
}

VerificationReport run_suite(std::string_view name, const SuiteOptions &opts) {
  const auto start = std::chrono::steady_clock::now();
  Plan plan{std::string(name), opts, {}};
  const Backend b = opts.backend;
  Builder build;
  if (name == "rota-baxter")
    build = pick(b, rota_baxter_suite<QMatrix>, rota_baxter_suite<DMatrix>);
  else if (name == "tridendriform")
    build = pick(b, tridendriform_suite<QMatrix>, tridendriform_suite<DMatrix>);
  else if (name == "prelie")
    build = pick(b, prelie_suite<QMatrix>, prelie_suite<DMatrix>);
  else if (name == "dyson")
    build = pick(b, dyson_suite<QMatrix>, dyson_suite<DMatrix>);
  else if (name == "magnus")
    build = pick(b, magnus_suite<QMatrix>, magnus_suite<DMatrix>);
  else if (name == "brace")
    build = pick(b, brace_suite<QMatrix>, brace_suite<DMatrix>);
  else if (name == "boundary")
    build = pick(b, boundary_suite<QMatrix>, boundary_suite<DMatrix>);
  else if (name == "yangian") {
    if (b != Backend::Exact)
      throw UsageError("the yangian suite runs in exact arithmetic only");
    build = yangian_suite;
  } else if (name == "continuum")
    build = continuum_suite;
  else
    throw UsageError(fmt::format("unknown suite '{}'", name));
  if (opts.sites && *opts.sites < 0)
    throw UsageError("site count must be non-negative");
  if (opts.dim && *opts.dim == 0)
    throw UsageError("dimension must be positive");
  if (opts.order && *opts.order < 1)
    throw UsageError("order must be at least 1");
  build(plan);

  std::vector<std::string> ids;
  for (std::size_t i = 0; i < plan.jobs.size(); ++i)
    ids.push_back(fmt::format("{}-{:03d}", name, i + 1));
  VerificationReport report;
  report.suite = std::string(name);
  report.seed = opts.seed;
  report.backend = b;
  report.tolerance = opts.tolerance;
  report.cases = run_jobs(plan.jobs, ids);
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
  return report;
}

} // namespace magnus
