#include "magnus/tensor.hpp"
#include "magnus/yangian.hpp"

#include <gtest/gtest.h>

using namespace magnus;

namespace {

QMatrix P(int a, int b, int total) {
  return kron_embed(permutation_op(2), {a, b}, total, 2);
}

void expect_all_zero(const std::vector<NamedDefect> &defects) {
  for (const auto &d : defects) {
    if (d.asserted) {
      EXPECT_TRUE(d.zero()) << d.name << " = " << d.size.str();
    }
  }
}

} // namespace

TEST(Permutation, TwoDimensionalLayout) {
  const QMatrix p = permutation_op(2);
  EXPECT_EQ(p, QMatrix::from_rows(
                   {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
}

TEST(YangBaxter, RationalRMatrix) {
  EXPECT_TRUE(ybe_residual(yangian_r_difference(2), 2, 3, 2, 0).is_zero());
  EXPECT_TRUE(ybe_residual(yangian_r(2), 2, 3, 2, 0).is_zero());
  EXPECT_TRUE(
      ybe_residual(yangian_r(3), 3, Rational(1, 2), -2, Rational(7, 3)).is_zero());
}

TEST(YangBaxter, BareSwapAtEqualArguments) {
  const auto swap_only = MatrixPoly::monomial(1, permutation_op(2), 0);
  EXPECT_TRUE(ybe_residual(swap_only, 2, 1, 1, 1).is_zero());
  EXPECT_EQ(P(1, 2, 3) * P(1, 3, 3) * P(2, 3, 3), P(2, 3, 3) * P(1, 3, 3) * P(1, 2, 3));
}

TEST(YangBaxter, PerturbedSwapFails) {
  // Rescaling P still solves the equation; an extra E_01 entry does not.
  const auto bad =
      MatrixPoly::monomial(1, QMatrix::identity(4), 1) +
      MatrixPoly::monomial(1, permutation_op(2) + QMatrix::unit(4, 0, 1), 0);
  EXPECT_FALSE(ybe_residual(bad, 2, 3, 2, 0).is_zero());
}

TEST(YangBaxter, Classical) {
  EXPECT_TRUE(classical_ybe_residual(classical_r(2), 2, 3, 2, 0).is_zero());
  EXPECT_TRUE(classical_ybe_residual(classical_r(3), 3, 5, -1, 2).is_zero());
}

TEST(Rtt, FundamentalAndGeometric) {
  for (std::size_t n : {2u, 3u}) {
    const auto rep = rtt_residual(yangian_r(n), LaxRep::fundamental(n));
    EXPECT_TRUE(rep.zero()) << "n=" << n;
    EXPECT_GT(rep.monomials_checked, 0);
  }
  EXPECT_TRUE(rtt_residual(yangian_r(2), LaxRep::geometric(2, 3)).zero());
}

TEST(Rtt, IdentityLaxIsTrivial) {
  LaxRep id = LaxRep::fundamental(2);
  id.coeffs.clear();
  EXPECT_TRUE(rtt_residual(yangian_r(2), id).zero());
}

TEST(Rtt, GridTooSmallIsRejected) {
  EXPECT_THROW(rtt_residual(yangian_r(2), LaxRep::fundamental(2), {1}, {2}),
               InsufficientSamples);
}

TEST(Rtt, NonSolutionIsDetected) {
  LaxRep lax = LaxRep::fundamental(2);
  lax.coeffs[0] = QMatrix::unit(4, 0, 3);
  EXPECT_FALSE(rtt_residual(yangian_r(2), lax).zero());
}

TEST(Monodromy, SingleSiteIsTheLax) {
  const auto t = monodromy_coproduct(LaxRep::fundamental(2), 1, 3);
  EXPECT_EQ(t[1], permutation_op(2));
  EXPECT_TRUE(t[2].is_zero());
}

TEST(Monodromy, TwoSiteCoproduct) {
  const auto t = monodromy_coproduct(LaxRep::fundamental(2), 2, 3);
  EXPECT_EQ(t[1], P(1, 2, 3) + P(1, 3, 3));
  EXPECT_EQ(t[2], P(1, 3, 3) * P(1, 2, 3));
}

TEST(Monodromy, RespectsDimensionBudget) {
  EXPECT_THROW(monodromy_coproduct(LaxRep::fundamental(2), 8, 2, 64),
               DimensionBudgetExceeded);
}

TEST(Monodromy, MonodromyIsAnRttSolution) {
  for (int sites = 1; sites <= 3; ++sites) {
    const auto t = monodromy_coproduct(LaxRep::fundamental(2), sites, sites);
    const auto lax = LaxRep::from_series(t, 2, sites, true);
    EXPECT_TRUE(rtt_residual(yangian_r(2), lax).zero()) << "N=" << sites;
  }
}

TEST(Transfer, SingleSite) {
  const auto t = monodromy_coproduct(LaxRep::fundamental(2), 1, 2);
  const auto tr = transfer_coefficients(t, 2);
  EXPECT_EQ(tr[0], Rational(2) * QMatrix::identity(2));
  EXPECT_EQ(tr[1], QMatrix::identity(2));
}

TEST(Transfer, CoefficientsCommute) {
  for (int sites = 1; sites <= 4; ++sites)
    EXPECT_TRUE(transfer_commute_residual(2, sites, sites).is_zero())
        << "N=" << sites;
}

TEST(Relations, GlExchangeAtLowestOrder) {
  const auto lax = LaxRep::fundamental(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const QMatrix Lij = slot0_block(lax.coeff(1), 2, i, j);
          const QMatrix Lkl = slot0_block(lax.coeff(1), 2, k, l);
          QMatrix rhs = Lij.zero_like();
          if (i == l)
            rhs = rhs + slot0_block(lax.coeff(1), 2, k, j);
          if (k == j)
            rhs = rhs - slot0_block(lax.coeff(1), 2, i, l);
          EXPECT_EQ(Lij * Lkl - Lkl * Lij, rhs);
          EXPECT_TRUE(yangian_relation_residual(lax, 0, 1, i, j, k, l).is_zero());
        }
}

TEST(Relations, SweepOnMonodromies) {
  for (int sites = 1; sites <= 3; ++sites) {
    const auto t = monodromy_coproduct(LaxRep::fundamental(2), sites, 4);
    const auto lax = LaxRep::from_series(t, 2, sites, true);
    EXPECT_TRUE(yangian_relations_sweep(lax, 3).is_zero()) << "N=" << sites;
  }
}

TEST(QGenerators, FirstEqualsL1AndRelationsHold) {
  const auto t = monodromy_coproduct(LaxRep::fundamental(2), 3, 3);
  const auto g = q_generators(t, 2);
  EXPECT_EQ(g.q[0], t[1]);
  expect_all_zero(q_relations(g));
}

TEST(Hopf, CoproductAndCounit) { expect_all_zero(hopf_checks(2)); }

TEST(Hopf, SecondOrderLogOfTwoSites) {
  const auto t = monodromy_coproduct(LaxRep::fundamental(2), 2, 2);
  const auto g = q_generators(t, 2);
  const QMatrix p1 = P(1, 2, 3), p2 = P(1, 3, 3);
  EXPECT_EQ(g.q[1], Rational(-1, 2) * (p1 * p1) - Rational(1, 2) * (p2 * p2) +
                        Rational(1, 2) * (p2 * p1 - p1 * p2));
}

TEST(Coproduct, TridendriformForms) {
  for (int sites = 2; sites <= 3; ++sites) {
    expect_all_zero(coproduct_checks(LaxRep::fundamental(2), sites));
    expect_all_zero(coproduct_checks(LaxRep::geometric(2, 3), sites));
  }
}
