#include "magnus/brace.hpp"
#include "magnus/expansion.hpp"
#include "magnus/random.hpp"

#include <gtest/gtest.h>

using namespace magnus;

namespace {

using Seq = SiteSequence<QMatrix>;
using FSeq = SiteSequence<FreeElement>;
using Alg = GradedPreLie<Seq>;

constexpr int kSites = 3;

Alg algebra(int d) {
  return Alg(d, Seq(kSites, QMatrix(2, 2)),
             [](const Seq &a, const Seq &b) { return prelie_left(a, b); });
}

Alg::Element random_element(const Alg &g, Rng &rng) {
  auto e = g.zero();
  for (int k = 1; k <= g.max_degree(); ++k) {
    Seq v(kSites, QMatrix(2, 2));
    for (int n = 1; n <= kSites; ++n)
      v[n] = rng.rational_matrix(2, 2, 2, 2);
    e[k] = v;
  }
  return e;
}

} // namespace

TEST(Brace, AbelianProductMakesWTrivial) {
  // A product that vanishes identically: W and Omega fix everything and
  // BCH is plain addition.
  using Z = GradedPreLie<QMatrix>;
  const Z g(4, QMatrix(1, 1),
            [](const QMatrix &a, const QMatrix &) { return a.zero_like(); });
  auto a = g.zero();
  a[1] = QMatrix::from_rows({{3}});
  EXPECT_EQ(g.w_map(a), a);
  EXPECT_EQ(g.omega_map(a), a);
  auto b = g.zero();
  b[2] = QMatrix::from_rows({{5}});
  EXPECT_EQ(g.bch(a, b), a + b);
}

TEST(Brace, WThroughThirdOrder) {
  const Alg g = algebra(3);
  Rng rng(2);
  const auto a = random_element(g, rng);
  const auto aa = g.prelie(a, a);
  EXPECT_EQ(g.w_map(a),
            a + Rational(1, 2) * aa + Rational(1, 6) * g.prelie(a, aa));
}

TEST(Brace, OmegaThroughThirdOrder) {
  const Alg g = algebra(3);
  Rng rng(3);
  const auto b = random_element(g, rng);
  const auto bb = g.prelie(b, b);
  EXPECT_EQ(g.omega_map(b), b - Rational(1, 2) * bb +
                                Rational(1, 4) * g.prelie(bb, b) +
                                Rational(1, 12) * g.prelie(b, bb));
}

TEST(Brace, WAndOmegaAreInverse) {
  const Alg g = algebra(4);
  Rng rng(4);
  for (int i = 0; i < 3; ++i) {
    const auto a = random_element(g, rng);
    EXPECT_EQ(g.omega_map(g.w_map(a)), a);
    EXPECT_EQ(g.w_map(g.omega_map(a)), a);
  }
}

TEST(Brace, FreeBackendRoundTrip) {
  const GradedPreLie<FSeq> g(4, FSeq(2, FreeElement()),
                             [](const FSeq &a, const FSeq &b) {
                               return prelie_left(a, b);
                             });
  auto b = g.zero();
  for (int k = 1; k <= 2; ++k) {
    FSeq v(2, FreeElement());
    for (int n = 1; n <= 2; ++n)
      v[n] = FreeElement::letter("b", n, k);
    b[k] = v;
  }
  EXPECT_EQ(g.w_map(g.omega_map(b)), b);
}

TEST(Brace, ZeroIsTheUnit) {
  const Alg g = algebra(4);
  Rng rng(5);
  const auto b = random_element(g, rng);
  EXPECT_EQ(g.brace_mul(g.zero(), b), b);
  EXPECT_EQ(g.brace_mul(b, g.zero()), b);
}

TEST(Brace, LeftBraceLaw) {
  const Alg g = algebra(4);
  Rng rng(6);
  for (int i = 0; i < 3; ++i) {
    const auto a = random_element(g, rng), b = random_element(g, rng),
               c = random_element(g, rng);
    EXPECT_EQ(g.brace_mul(a, b + c) + a, g.brace_mul(a, b) + g.brace_mul(a, c));
  }
}

TEST(Brace, Associativity) {
  const Alg g = algebra(4);
  Rng rng(7);
  const auto a = random_element(g, rng), b = random_element(g, rng),
             c = random_element(g, rng);
  EXPECT_EQ(g.brace_mul(g.brace_mul(a, b), c), g.brace_mul(a, g.brace_mul(b, c)));
}

TEST(Brace, WIntertwinesBraceAndBch) {
  const Alg g = algebra(4);
  Rng rng(8);
  for (int i = 0; i < 3; ++i) {
    const auto a = random_element(g, rng), b = random_element(g, rng);
    EXPECT_EQ(g.brace_mul(g.w_map(a), g.w_map(b)), g.w_map(g.bch(a, b)));
  }
}

TEST(Brace, BchLowDegrees) {
  Rng rng(9);
  const Alg g2 = algebra(2);
  const auto a2 = random_element(g2, rng), b2 = random_element(g2, rng);
  EXPECT_EQ(g2.bch(a2, b2), a2 + b2 + Rational(1, 2) * g2.bracket(a2, b2));
  const Alg g3 = algebra(3);
  const auto a3 = random_element(g3, rng), b3 = random_element(g3, rng);
  EXPECT_EQ(g3.bch(a3, b3), g3.bch_third_order(a3, b3));
}

TEST(Brace, MagnusIsOmegaOfTheDressedSequence) {
  // With a in degree 1 the brace picture gives the whole Magnus series:
  // summing Omega(a P) over sites reproduces Q degree by degree.
  Rng rng(10);
  const Alg g = algebra(4);
  Seq p(kSites, QMatrix(2, 2));
  for (int n = 1; n <= kSites; ++n)
    p[n] = rng.int_matrix(2, 2, 2);
  const auto omega = g.omega_map(g.homogeneous(p, 1));
  const auto q = expand_oracle(linear_family(p), 4).q;
  for (int k = 1; k <= 4; ++k)
    EXPECT_EQ(omega[k].total(), q[k - 1]) << "degree " << k;
}
