#include "magnus/expansion.hpp"
#include "magnus/random.hpp"

#include <gtest/gtest.h>

using namespace magnus;

namespace {

QMatrix sc(const Rational &v) { return QMatrix::from_rows({{v}}); }

SiteOperatorFamily<QMatrix> scalar_linear(int sites, const Rational &p,
                                          Direction dir = Direction::Forward) {
  SiteOperatorFamily<QMatrix> f(sites, QMatrix(1, 1), dir);
  for (int n = 1; n <= sites; ++n)
    f.set(n, 1, sc(p));
  return f;
}

SiteOperatorFamily<QMatrix> random_family(Rng &rng, int sites,
                                          const std::vector<int> &degrees,
                                          Direction dir) {
  SiteOperatorFamily<QMatrix> f(sites, QMatrix(2, 2), dir);
  for (int n = 1; n <= sites; ++n)
    for (int d : degrees)
      f.set(n, d, rng.int_matrix(2, 2, 3));
  return f;
}

SiteOperatorFamily<FreeElement> free_family(int sites,
                                            const std::vector<int> &degrees,
                                            Direction dir) {
  SiteOperatorFamily<FreeElement> f(sites, FreeElement(), dir);
  for (int n = 1; n <= sites; ++n)
    for (int d : degrees)
      f.set(n, d, FreeElement::letter("L", n, d));
  return f;
}

} // namespace

TEST(Monodromy, ScalarSquare) {
  const auto t = monodromy_direct(scalar_linear(2, 1), 3);
  EXPECT_EQ(t[0], sc(1));
  EXPECT_EQ(t[1], sc(2));
  EXPECT_EQ(t[2], sc(1));
  EXPECT_EQ(t[3], sc(0));
}

TEST(Monodromy, NoSitesIsIdentity) {
  const auto t = monodromy_direct(SiteOperatorFamily<QMatrix>(0, QMatrix(2, 2)), 3);
  EXPECT_EQ(t, AlphaSeries<QMatrix>::identity(3, QMatrix(2, 2)));
}

TEST(Monodromy, FreeWordsFollowDirection) {
  const auto fwd = monodromy_direct(free_family(2, {1}, Direction::Forward), 2);
  const auto L1 = FreeElement::letter("L", 1), L2 = FreeElement::letter("L", 2);
  EXPECT_EQ(fwd[1], L1 + L2);
  EXPECT_EQ(fwd[2], L2 * L1);
  const auto bwd = monodromy_direct(free_family(2, {1}, Direction::Backward), 2);
  EXPECT_EQ(bwd[2], L1 * L2);
}

TEST(Monodromy, FreeMixedDegreesAtOrderTwo) {
  const auto t = monodromy_direct(free_family(2, {1, 2}, Direction::Forward), 2);
  auto L = [](int n, int d) { return FreeElement::letter("L", n, d); };
  EXPECT_EQ(t[2], L(2, 1) * L(1, 1) + L(1, 2) + L(2, 2));
}

TEST(Dyson, FirstAndSecondTerms) {
  Rng rng(3);
  const auto fam = random_family(rng, 4, {1, 2}, Direction::Forward);
  const auto t = dyson_terms(fam, 2, DysonMethod::DirectSum);
  EXPECT_EQ(t[0], fam.degree_sequence(1).total());
  const auto l1 = fam.degree_sequence(1);
  const auto prec = trid(TridOp::Prec, l1, l1, RotaBaxterOp::partial_sum());
  EXPECT_EQ(t[1], prec.total() + fam.degree_sequence(2).total());
  EXPECT_EQ(dyson_terms(scalar_linear(2, 1), 2, DysonMethod::DirectSum)[1], sc(1));
}

TEST(Dyson, BothMethodsMatchDirectProduct) {
  Rng rng(41);
  for (int i = 0; i < 12; ++i) {
    const Direction dir = i % 2 ? Direction::Backward : Direction::Forward;
    const auto fam = random_family(rng, 1 + i % 5, {1, 2, 3}, dir);
    const auto t = monodromy_direct(fam, 4);
    for (auto method : {DysonMethod::DirectSum, DysonMethod::Tridendriform}) {
      const auto terms = dyson_terms(fam, 4, method);
      for (int m = 1; m <= 4; ++m)
        EXPECT_EQ(terms[m - 1], t[m]) << "family " << i << " order " << m;
    }
  }
}

TEST(Dyson, FreeBackendBothDirections) {
  for (auto dir : {Direction::Forward, Direction::Backward}) {
    const auto fam = free_family(3, {1, 2}, dir);
    const auto t = monodromy_direct(fam, 3);
    for (auto method : {DysonMethod::DirectSum, DysonMethod::Tridendriform}) {
      const auto terms = dyson_terms(fam, 3, method);
      for (int m = 1; m <= 3; ++m)
        EXPECT_EQ(terms[m - 1], t[m]);
    }
  }
}

TEST(Dyson, PrintedBackwardIndexIsNotTheMonodromy) {
  const auto fam = free_family(3, {1}, Direction::Backward);
  const auto t = monodromy_direct(fam, 3);
  EXPECT_NE(dyson_backward_as_printed(fam, 3)[2], t[3]);
}

TEST(PiTable, Entries) {
  Rng rng(5);
  const std::vector<QMatrix> t = {rng.int_matrix(2, 2, 3), rng.int_matrix(2, 2, 3),
                                  rng.int_matrix(2, 2, 3)};
  const auto pi = pi_table(t);
  EXPECT_EQ(pi(2, 2), t[0] * t[0]);
  EXPECT_EQ(pi(3, 2), t[0] * t[1] + t[1] * t[0]);
  EXPECT_EQ(pi(3, 3), t[0] * t[0] * t[0]);
  EXPECT_EQ(pi_table(std::vector<QMatrix>{sc(2), sc(1)})(2, 2), sc(4));
}

TEST(Magnus, ScalarLinearPair) {
  const auto r = expand_oracle(scalar_linear(2, 1), 3);
  ASSERT_EQ(r.q.size(), 3u);
  EXPECT_EQ(r.q[0], sc(2));
  EXPECT_EQ(r.q[1], sc(-1));
  EXPECT_EQ(r.q[2], sc(Rational(2, 3)));
}

TEST(Magnus, SecondOrderFormula) {
  Rng rng(6);
  const auto fam = random_family(rng, 3, {1, 2}, Direction::Forward);
  const auto r = expand_oracle(fam, 2);
  EXPECT_EQ(r.q[1], r.t[1] - Rational(1, 2) * (r.t[0] * r.t[0]));
}

TEST(Magnus, IdentityDysonTermsGiveZero) {
  const std::vector<QMatrix> zeros(4, QMatrix(2, 2));
  for (const auto &q : magnus_from_dyson(zeros))
    EXPECT_TRUE(q.is_zero());
}

TEST(Magnus, ExponentialRoundTrip) {
  Rng rng(12);
  for (int i = 0; i < 8; ++i) {
    const auto fam = random_family(rng, 1 + i % 4, {1, 3},
                                   i % 2 ? Direction::Backward : Direction::Forward);
    const auto r = expand_oracle(fam, 4);
    const auto rebuilt =
        series_exp(series_from_terms(r.q, fam.prototype(), false));
    EXPECT_EQ(rebuilt, monodromy_direct(fam, 4));
  }
}

TEST(Magnus, OrderSignVariantDiffersFromThirdOrder) {
  // At order 2 the two signs agree; with three factors of T1 they do not.
  const auto t = dyson_terms(scalar_linear(2, 1), 3, DysonMethod::DirectSum);
  EXPECT_EQ(magnus_from_dyson(t, true)[1], magnus_from_dyson(t)[1]);
  EXPECT_NE(magnus_from_dyson(t, true)[2], magnus_from_dyson(t)[2]);
}

TEST(ClosedForm, ScalarExplicitSecondOrder) {
  EXPECT_EQ(magnus_closed_form(scalar_linear(2, 1), ClosedStyle::Explicit, 2)[1],
            sc(-1));
}

TEST(ClosedForm, PreLieSecondOrderFormula) {
  Rng rng(9);
  const auto fam = random_family(rng, 4, {1, 2}, Direction::Forward);
  const auto l1 = fam.degree_sequence(1);
  const QMatrix expect = Rational(-1, 2) * prelie_left(l1, l1).total() +
                         fam.degree_sequence(2).total();
  EXPECT_EQ(magnus_closed_form(fam, ClosedStyle::PreLie, 2)[1], expect);
}

TEST(ClosedForm, PreLieThirdOrderLinear) {
  Rng rng(10);
  const auto fam = random_family(rng, 4, {1}, Direction::Forward);
  const auto p = fam.degree_sequence(1);
  const QMatrix expect =
      Rational(1, 4) * prelie_left(prelie_left(p, p), p).total() +
      Rational(1, 12) * prelie_left(p, prelie_left(p, p)).total();
  EXPECT_EQ(magnus_closed_form(fam, ClosedStyle::PreLie, 3)[2], expect);
}

TEST(ClosedForm, BothStylesMatchOracle) {
  Rng rng(77);
  for (int i = 0; i < 10; ++i) {
    const auto dir = i % 2 ? Direction::Backward : Direction::Forward;
    const auto fam = random_family(rng, 1 + i % 5, {1, 2, 3}, dir);
    const auto oracle = expand_oracle(fam, 3).q;
    for (auto style : {ClosedStyle::PreLie, ClosedStyle::Explicit}) {
      const auto q = magnus_closed_form(fam, style, 3);
      for (int m = 0; m < 3; ++m)
        EXPECT_EQ(q[m], oracle[m]) << "family " << i << " order " << m + 1;
    }
    for (const auto &d : closed_form_defects(fam, ClosedStyle::PreLie, 3))
      EXPECT_TRUE(d.defect.is_zero());
  }
}

TEST(ClosedForm, FreeBackendMatchesOracle) {
  for (auto dir : {Direction::Forward, Direction::Backward}) {
    const auto fam = free_family(3, {1, 2, 3}, dir);
    const auto oracle = expand_oracle(fam, 3).q;
    const auto q = magnus_closed_form(fam, ClosedStyle::PreLie, 3);
    for (int m = 0; m < 3; ++m)
      EXPECT_EQ(q[m], oracle[m]);
  }
}

TEST(Factorized, IdentityMReducesToLinear) {
  Rng rng(14);
  SiteSequence<QMatrix> m(3, QMatrix(2, 2)), l(3, QMatrix(2, 2));
  for (int n = 1; n <= 3; ++n) {
    m[n] = QMatrix::identity(2);
    l[n] = rng.int_matrix(2, 2, 3);
  }
  const auto r = factorized_expansion(m, l, 3);
  EXPECT_EQ(r.dressed, l);
  EXPECT_EQ(r.q, expand_oracle(linear_family(l), 3).q);
  EXPECT_TRUE(r.residual.is_zero());
}

TEST(Factorized, RandomInvertibleResidualVanishes) {
  Rng rng(15);
  for (int i = 0; i < 5; ++i) {
    SiteSequence<QMatrix> m(2 + i % 2, QMatrix(2, 2)), l = m;
    for (int n = 1; n <= m.size(); ++n) {
      m[n] = rng.invertible_matrix(2, 3);
      l[n] = rng.rational_matrix(2, 2, 3, 2);
    }
    EXPECT_TRUE(factorized_expansion(m, l, 3).residual.is_zero());
  }
}

TEST(Factorized, ScalarClosedForm) {
  SiteSequence<QMatrix> m(2, QMatrix(1, 1)), l = m;
  for (int n = 1; n <= 2; ++n) {
    m[n] = sc(2);
    l[n] = sc(1);
  }
  const auto r = factorized_expansion(m, l, 3);
  EXPECT_EQ(r.m_product, sc(4));
  EXPECT_EQ(r.dressed[1], sc(Rational(1, 2)));
  EXPECT_EQ(r.dressed[2], sc(Rational(1, 2)));
  EXPECT_TRUE(r.residual.is_zero());
}

TEST(Family, SiteRangeErrors) {
  SiteOperatorFamily<QMatrix> f(2, QMatrix(2, 2));
  EXPECT_THROW(f.set(3, 1, QMatrix(2, 2)), SiteOutOfRange);
  EXPECT_THROW(SiteOperatorFamily<QMatrix>(-1, QMatrix(2, 2)), SiteOutOfRange);
  EXPECT_THROW(f.set(1, 1, QMatrix(3, 3)), DimensionMismatch);
}
