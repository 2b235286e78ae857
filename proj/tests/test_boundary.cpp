#include "magnus/boundary.hpp"
#include "magnus/random.hpp"
#include "magnus/yangian.hpp"

#include <gtest/gtest.h>

using namespace magnus;

namespace {

QMatrix sc(const Rational &v) { return QMatrix::from_rows({{v}}); }

SiteOperatorFamily<QMatrix> random_family(Rng &rng, int sites, int degrees) {
  SiteOperatorFamily<QMatrix> f(sites, QMatrix(2, 2));
  for (int n = 1; n <= sites; ++n)
    for (int d = 1; d <= degrees; ++d)
      f.set(n, d, rng.rational_matrix(2, 2, 3, 2));
  return f;
}

SiteOperatorFamily<QMatrix> scalar_linear(int sites, const Rational &p) {
  SiteOperatorFamily<QMatrix> f(sites, QMatrix(1, 1));
  for (int n = 1; n <= sites; ++n)
    f.set(n, 1, sc(p));
  return f;
}

AlphaSeries<QMatrix> random_k(Rng &rng, int order) {
  AlphaSeries<QMatrix> k(order, QMatrix(2, 2));
  k[0] = rng.invertible_matrix(2, 3);
  for (int m = 1; m <= order; ++m)
    k[m] = rng.int_matrix(2, 2, 2);
  return k;
}

} // namespace

TEST(Gauge, EqualFamiliesKeepTheIdentity) {
  Rng rng(1);
  const auto fam = random_family(rng, 3, 2);
  const auto s = gauge_solve<QMatrix>({fam, fam, QMatrix::identity(2), 3});
  EXPECT_TRUE(s.residuals_vanish());
  for (const auto &g : s.values)
    EXPECT_EQ(g, AlphaSeries<QMatrix>::identity(3, QMatrix(2, 2)));
}

TEST(Gauge, RandomProblemsSolveExactly) {
  Rng rng(2);
  for (int i = 0; i < 6; ++i) {
    const auto fam = random_family(rng, 3, 3), hat = random_family(rng, 3, 3);
    const auto s = gauge_solve<QMatrix>({fam, hat, rng.invertible_matrix(2, 3), 3});
    EXPECT_EQ(s.values.size(), 4u);
    EXPECT_TRUE(s.residuals_vanish());
  }
}

TEST(Gauge, ScalarClosedForm) {
  const auto s =
      gauge_solve<QMatrix>({scalar_linear(2, 1), scalar_linear(2, 2), sc(1), 3});
  // G_3 = (1+2a)^2 (1+a)^{-2} = 1 + 2a - a^2 + O(a^4).
  const auto num = series_mul(AlphaSeries<QMatrix>::linear(3, sc(2)),
                              AlphaSeries<QMatrix>::linear(3, sc(2)));
  const auto den = series_mul(AlphaSeries<QMatrix>::linear(3, sc(1)),
                              AlphaSeries<QMatrix>::linear(3, sc(1)));
  EXPECT_EQ(s.values[2], series_mul(num, series_inverse(den)));
  EXPECT_EQ(s.values[2][1], sc(2));
  EXPECT_EQ(s.values[2][2], sc(-1));
  EXPECT_EQ(s.values[2][3], sc(0));
}

TEST(DoubleRow, IdentityEverywhere) {
  const SiteOperatorFamily<QMatrix> id(3, QMatrix(2, 2));
  const auto k = AlphaSeries<QMatrix>::identity(3, QMatrix(2, 2));
  const auto r = double_row_monodromy<QMatrix>({id, id, k});
  EXPECT_TRUE(r.rows.residuals_vanish());
  EXPECT_TRUE(r.endpoint_defect.is_zero());
  for (const auto &v : r.rows.values)
    EXPECT_EQ(v, k);
}

TEST(DoubleRow, RandomProblems) {
  Rng rng(3);
  for (int i = 0; i < 6; ++i) {
    const auto fam = random_family(rng, 3, 2), hat = random_family(rng, 3, 2);
    const auto r = double_row_monodromy<QMatrix>({fam, hat, random_k(rng, 3)});
    EXPECT_TRUE(r.rows.residuals_vanish());
    EXPECT_TRUE(r.endpoint_defect.is_zero());
  }
}

TEST(DoubleRow, ReflectionChoiceWithFundamentalLax) {
  const auto fam = lax_site_family(LaxRep::fundamental(2), 2);
  const auto hat = reflection_hat(fam, 3);
  const auto k =
      AlphaSeries<QMatrix>::identity(3, QMatrix(fam.prototype().rows(),
                                                fam.prototype().rows()));
  const auto r = double_row_monodromy<QMatrix>({fam, hat, k});
  EXPECT_TRUE(r.rows.residuals_vanish());
  EXPECT_TRUE(r.endpoint_defect.is_zero());
}

TEST(Reflection, GeometricSeriesWithCancellingSigns) {
  const auto hat = reflection_hat(scalar_linear(1, 3), 4);
  for (int m = 1; m <= 4; ++m)
    EXPECT_EQ(hat.get(1, m), sc(pow(Rational(3), m))) << "order " << m;
}

TEST(Reflection, IdentityAndInvolution) {
  const SiteOperatorFamily<QMatrix> id(2, QMatrix(2, 2));
  const auto h = reflection_hat(id, 3);
  for (int n = 1; n <= 2; ++n)
    for (int m = 1; m <= 3; ++m)
      EXPECT_TRUE(h.get(n, m).is_zero());

  Rng rng(4);
  const auto fam = random_family(rng, 3, 2);
  const auto twice = reflection_hat(reflection_hat(fam, 4), 4);
  for (int n = 1; n <= 3; ++n) {
    const auto a = fam.site_series(n, 4), b = twice.site_series(n, 4);
    EXPECT_EQ(a, b) << "site " << n;
  }
}
