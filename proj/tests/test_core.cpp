#include "magnus/alpha_series.hpp"
#include "magnus/operator.hpp"
#include "magnus/random.hpp"
#include "magnus/tensor.hpp"

#include <gtest/gtest.h>

using namespace magnus;

namespace {

AlphaSeries<QMatrix> scalar_series(std::initializer_list<Rational> c) {
  const QMatrix one = QMatrix::identity(1);
  AlphaSeries<QMatrix> s(static_cast<int>(c.size()) - 1, one);
  int k = 0;
  for (const auto &v : c)
    s[k++] = v * one;
  return s;
}

} // namespace

TEST(Rational, ParsesAndPrintsInLowestTerms) {
  EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));
  EXPECT_EQ(Rational::parse("-7").str(), "-7");
  EXPECT_EQ(Rational(2, -6).str(), "-1/3");
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse("abc"), Error);
}

TEST(Rational, Combinatorics) {
  EXPECT_EQ(factorial(5), Rational(120));
  EXPECT_EQ(binomial(6, 2), Rational(15));
  EXPECT_EQ(pow(Rational(2, 3), 3), Rational(8, 27));
}

TEST(Matrix, InverseAndDeterminantAreExact) {
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    const QMatrix m = rng.invertible_matrix(3, 4);
    EXPECT_EQ(m * m.inverse(), QMatrix::identity(3));
    EXPECT_EQ(m.determinant() * m.inverse().determinant(), Rational(1));
  }
  const QMatrix singular = QMatrix::from_rows({{1, 2}, {2, 4}});
  EXPECT_THROW(singular.inverse(), SingularError);
  EXPECT_EQ(singular.determinant(), Rational(0));
}

TEST(Matrix, ShapeErrors) {
  EXPECT_THROW(QMatrix(2, 2) + QMatrix(3, 3), DimensionMismatch);
  EXPECT_THROW(QMatrix(2, 3) * QMatrix(2, 3), DimensionMismatch);
}

TEST(Kernels, ParallelProductMatchesSerialExact) {
  Rng rng(5);
  // 24^3 is above the threshold, so the OpenMP branch actually runs.
  for (std::size_t n : {3u, 24u, 40u}) {
    const QMatrix a = rng.rational_matrix(n, n, 5, 3);
    const QMatrix b = rng.rational_matrix(n, n, 5, 3);
    EXPECT_EQ(a * b, multiply_serial(a, b)) << "n=" << n;
  }
}

TEST(Kernels, ParallelProductMatchesSerialFloat) {
  Rng rng(6);
  const DMatrix a = to_double(rng.int_matrix(48, 48, 9));
  const DMatrix b = to_double(rng.int_matrix(48, 48, 9));
  // Integer entries keep every partial sum exact, so equality is bitwise.
  EXPECT_EQ(a * b, multiply_serial(a, b));
}

TEST(Kernels, ParallelEmbedMatchesSerial) {
  Rng rng(8);
  const QMatrix op = rng.int_matrix(4, 4, 3);
  for (const std::vector<int> &slots :
       {std::vector<int>{0, 1}, {1, 3}, {3, 0}, {2, 4}}) {
    EXPECT_EQ(embed(op, slots, 5, 2), embed_serial(op, slots, 5, 2));
  }
}

TEST(Tensor, EmbedIdentityGivesIdentity) {
  EXPECT_EQ(kron_embed(QMatrix::identity(2), {2}, 3, 2), QMatrix::identity(8));
}

TEST(Tensor, SwapOnFirstTwoOfThreeFactors) {
  const QMatrix p12 = kron_embed(permutation_op(2), {1, 2}, 3, 2);
  // Basis index is 4*i + 2*j + k; the swap sends (i,j,k) to (j,i,k).
  QMatrix expect(8, 8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        expect(4 * j + 2 * i + k, 4 * i + 2 * j + k) = 1;
  EXPECT_EQ(p12, expect);
}

TEST(Tensor, SingleSlotEmbedIsKronecker) {
  Rng rng(2);
  const QMatrix a = rng.int_matrix(2, 2, 3);
  const QMatrix id = QMatrix::identity(2);
  EXPECT_EQ(kron_embed(a, {1}, 2, 2), kron(a, id));
  EXPECT_EQ(kron_embed(a, {2}, 2, 2), kron(id, a));
}

TEST(Tensor, DisjointSlotsCommute) {
  Rng rng(3);
  const QMatrix a = kron_embed(rng.int_matrix(2, 2, 3), {1}, 3, 2);
  const QMatrix b = kron_embed(rng.int_matrix(2, 2, 3), {2}, 3, 2);
  EXPECT_EQ(a * b, b * a);
}

TEST(Tensor, InvalidSlotsRejected) {
  EXPECT_THROW(kron_embed(permutation_op(2), {1, 1}, 3, 2), InvalidSlots);
  EXPECT_THROW(kron_embed(QMatrix::identity(2), {4}, 3, 2), InvalidSlots);
}

TEST(Tensor, PermutationIsInvolutionAndTracesToIdentity) {
  for (std::size_t n : {2u, 3u}) {
    const QMatrix p = permutation_op(n);
    EXPECT_EQ(p * p, QMatrix::identity(n * n));
    EXPECT_EQ(partial_trace_slot0(p, n), QMatrix::identity(n));
  }
}

TEST(Operators, AdjointPowers) {
  const QMatrix e12 = QMatrix::unit(2, 0, 1), e21 = QMatrix::unit(2, 1, 0);
  EXPECT_EQ(ad_pow(e12, e21, 0), e21);
  EXPECT_EQ(ad_pow(e12, e21, 1), QMatrix::unit(2, 0, 0) - QMatrix::unit(2, 1, 1));
  EXPECT_EQ(ad_pow(e12, e21, 2), Rational(-2) * e12);
}

TEST(FreeAlgebra, WordOrderIsKept) {
  const auto x = FreeElement::letter("X", 1), y = FreeElement::letter("Y", 1);
  EXPECT_NE(x * y, y * x);
  EXPECT_EQ((x * y).size(), 1u);
  EXPECT_EQ((x + y) * (x + y), x * x + x * y + y * x + y * y);
}

TEST(Series, BinomialSquare) {
  const auto s = scalar_series({1, 1, 0});
  EXPECT_EQ(series_mul(s, s), scalar_series({1, 2, 1}));
  EXPECT_EQ(series_mul(s, AlphaSeries<QMatrix>::identity(2, s.prototype())), s);
}

TEST(Series, FreeProductPreservesOrder) {
  const auto X = FreeElement::letter("X", 1), Y = FreeElement::letter("Y", 1);
  const auto a = AlphaSeries<FreeElement>::linear(2, X);
  const auto b = AlphaSeries<FreeElement>::linear(2, Y);
  const auto p = series_mul(a, b);
  EXPECT_EQ(p[0], FreeElement::one());
  EXPECT_EQ(p[1], X + Y);
  EXPECT_EQ(p[2], X * Y);
}

TEST(Series, ScalarExponential) {
  const auto e = series_exp(scalar_series({0, 2, 0, 0}));
  EXPECT_EQ(e, scalar_series({1, 2, 2, Rational(4, 3)}));
  const auto z = scalar_series({0, 0, 0});
  EXPECT_EQ(series_exp(z), AlphaSeries<QMatrix>::identity(2, z.prototype()));
}

TEST(Series, ScalarLogarithm) {
  const auto l = series_log(scalar_series({1, 2, 1, 0}));
  EXPECT_EQ(l, scalar_series({0, 2, -1, Rational(2, 3)}));
  const auto id = AlphaSeries<QMatrix>::identity(3, QMatrix::identity(1));
  EXPECT_TRUE(series_log(id).is_zero());
}

TEST(Series, LogExpRoundTripOnFreeElements) {
  Rng rng(21);
  AlphaSeries<FreeElement> q(4, FreeElement());
  for (int k = 1; k <= 4; ++k)
    q[k] = rng.free_element("X", 2, 3, 2, 3);
  EXPECT_EQ(series_log(series_exp(q)), q);
}

TEST(Series, LogCoefficientsAsSymmetricPolynomials) {
  Rng rng(4);
  AlphaSeries<QMatrix> t = AlphaSeries<QMatrix>::identity(3, QMatrix(2, 2));
  for (int k = 1; k <= 3; ++k)
    t[k] = rng.int_matrix(2, 2, 3);
  const auto q = series_log(t);
  EXPECT_EQ(q[2], t[2] - Rational(1, 2) * (t[1] * t[1]));
  EXPECT_EQ(q[3], t[3] - Rational(1, 2) * (t[1] * t[2] + t[2] * t[1]) +
                      Rational(1, 3) * (t[1] * t[1] * t[1]));
}

TEST(Series, InverseAndErrors) {
  Rng rng(9);
  AlphaSeries<QMatrix> t(3, QMatrix(2, 2));
  t[0] = rng.invertible_matrix(2, 3);
  for (int k = 1; k <= 3; ++k)
    t[k] = rng.int_matrix(2, 2, 3);
  EXPECT_EQ(series_mul(t, series_inverse(t)),
            AlphaSeries<QMatrix>::identity(3, t.prototype()));
  EXPECT_THROW(series_exp(t), ConstantTermError);
  EXPECT_THROW(series_log(scalar_series({2, 1})), ConstantTermError);
  EXPECT_THROW(series_mul(scalar_series({1, 1}), scalar_series({1, 1, 1})),
               TruncationMismatch);
}

TEST(Random, DerivedSeedsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(7, 1), derive_seed(7, 1));
  EXPECT_NE(derive_seed(7, 1), derive_seed(7, 2));
  Rng a(derive_seed(7, 3)), b(derive_seed(7, 3));
  EXPECT_EQ(a.int_matrix(3, 3, 5), b.int_matrix(3, 3, 5));
}
