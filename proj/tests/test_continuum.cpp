#include "magnus/continuum.hpp"
#include "magnus/spec_parse.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace magnus;

namespace {

const QMatrix X = QMatrix::unit(2, 0, 1);
const QMatrix Y = QMatrix::unit(2, 1, 0);

// A(x) = X + xY.
PolyField linear_field() {
  return PolyField::constant(X) + PolyField::monomial(Y, 1);
}

// -(x^3/12)[X,Y].
PolyField q2_expected() {
  return PolyField::monomial(Rational(-1, 12) * (X * Y - Y * X), 3);
}

} // namespace

TEST(Bernoulli, LowIndices) {
  EXPECT_EQ(bernoulli(0), Rational(1));
  EXPECT_EQ(bernoulli(1), Rational(-1, 2));
  EXPECT_EQ(bernoulli(2), Rational(1, 6));
  EXPECT_EQ(bernoulli(3), Rational(0));
  EXPECT_EQ(bernoulli(4), Rational(-1, 30));
  EXPECT_EQ(bernoulli(7), Rational(0));
  EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
}

TEST(ContinuousMagnus, FirstOrderIsTheIntegral) {
  const PolyField a = linear_field();
  EXPECT_EQ(magnus_continuous(a, 1)[0], a.integrate(0));
  EXPECT_EQ(magnus_bernoulli_iterate(a, 1, 1)[0], a.integrate(0));
  EXPECT_EQ(magnus_bernoulli_iterate(a, 5, 1)[0], a.integrate(0));
}

TEST(ContinuousMagnus, SecondOrderOnLinearFieldAllMethods) {
  const PolyField a = linear_field();
  EXPECT_EQ(magnus_continuous(a, 2, ContinuousForm::Commutator)[1], q2_expected());
  EXPECT_EQ(magnus_continuous(a, 2, ContinuousForm::PreLie)[1], q2_expected());
  EXPECT_EQ(magnus_bernoulli_iterate(a, 2, 2)[1], q2_expected());
  EXPECT_EQ(magnus_from_continuous_dyson(a, 2)[1], q2_expected());
}

TEST(ContinuousMagnus, ThirdOrderAgreement) {
  const PolyField a = parse_field_spec("field:poly(X + x*Y - 2*x^2*H;dim=2)");
  const auto comm = magnus_continuous(a, 3, ContinuousForm::Commutator);
  const auto pre = magnus_continuous(a, 3, ContinuousForm::PreLie);
  const auto bern = magnus_bernoulli_iterate(a, 3, 3);
  const auto log_dyson = magnus_from_continuous_dyson(a, 3);
  for (int m = 0; m < 3; ++m) {
    EXPECT_EQ(comm[m], pre[m]) << "order " << m + 1;
    EXPECT_EQ(comm[m], bern[m]) << "order " << m + 1;
    EXPECT_EQ(comm[m], log_dyson[m]) << "order " << m + 1;
  }
}

TEST(ContinuousMagnus, NonzeroLowerLimit) {
  const PolyField a = linear_field();
  const Rational x0(1, 3);
  const auto comm = magnus_continuous(a, 3, ContinuousForm::Commutator, x0);
  const auto log_dyson = magnus_from_continuous_dyson(a, 3, x0);
  for (int m = 0; m < 3; ++m)
    EXPECT_EQ(comm[m], log_dyson[m]);
  EXPECT_TRUE(comm[0].evaluate(x0).is_zero());
}

TEST(ContinuousMagnus, CommutingFieldHasNoHigherTerms) {
  const QMatrix h = QMatrix::unit(2, 0, 0) - QMatrix::unit(2, 1, 1);
  const PolyField a = PolyField::constant(h) + PolyField::monomial(Rational(3) * h, 2);
  const auto q = magnus_continuous(a, 3);
  EXPECT_TRUE(q[1].is_zero());
  EXPECT_TRUE(q[2].is_zero());
}

TEST(ContinuousMagnus, DepthAndOrderErrors) {
  EXPECT_THROW(magnus_bernoulli_iterate(linear_field(), 2, 3), InsufficientDepth);
  EXPECT_THROW(magnus_continuous(linear_field(), 4), Error);
}

TEST(ContinuousDyson, SimplexAndDendriformAgree) {
  const PolyField a = linear_field();
  const auto s = dyson_continuous(a, 4), d = dyson_dendriform(a, 4);
  for (int m = 0; m < 4; ++m)
    EXPECT_EQ(s[m], d[m]);
  EXPECT_EQ(s[0], a.integrate(0));
}

TEST(Discretize, ConstantFieldRiemannSumIsExact) {
  const QMatrix c = QMatrix::from_rows({{1, 2}, {3, -1}});
  const PolyField a = PolyField::constant(c);
  const Rational delta(1, 8);
  const auto fam = discretize(a, Rational(0), delta, 8);
  EXPECT_EQ(expand_oracle(fam, 1).q[0], c);
}

TEST(Discretize, SingleSite) {
  const PolyField a = linear_field();
  const Rational x0(1, 2), delta(1, 4);
  const auto t = monodromy_direct(discretize(a, x0, delta, 1), 2);
  EXPECT_EQ(t[1], delta * a.evaluate(x0));
  EXPECT_TRUE(t[2].is_zero());
}

TEST(Discretize, StepCount) {
  EXPECT_EQ(step_count(0, 1, 0.125), 8);
  EXPECT_EQ(step_count(0.5, 1, 0.1), 5);
}

TEST(Convergence, ConstantFieldHasZeroFirstOrderError) {
  const PolyField a = PolyField::constant(X + Rational(2) * Y);
  const auto table = convergence_study(a, halving_deltas(0.25, 3), 3);
  for (const auto &row : table.rows)
    EXPECT_EQ(row.error[0], 0.0);
}

TEST(Convergence, LinearFieldRates) {
  const auto table = convergence_study(linear_field(), halving_deltas(0.125, 4), 3);
  ASSERT_EQ(table.rows.size(), 5u);
  const auto r1 = table.estimated_rate(1), r2 = table.estimated_rate(2);
  ASSERT_TRUE(r1 && r2);
  EXPECT_GE(*r1, 0.85);
  EXPECT_LE(*r1, 1.15);
  EXPECT_GE(*r2, 0.85);
  EXPECT_LE(*r2, 1.15);
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    EXPECT_LT(table.rows[i].error[1], table.rows[i - 1].error[1]);
}

TEST(Convergence, DiscreteSecondOrderApproachesContinuous) {
  const double exact = -1.0 / 12;
  const auto fam = discretize(linear_field(), 0.0, 1.0 / 256, 256);
  const auto q2 = expand_oracle(fam, 2).q[1];
  // [X,Y] = diag(1,-1), so Q2 is diagonal with entries -/+ 1/12 in the limit.
  EXPECT_NEAR(q2(0, 0), exact, 2e-3);
  EXPECT_NEAR(q2(1, 1), -exact, 2e-3);
}

TEST(Convergence, CsvLayout) {
  const auto table = convergence_study(linear_field(), {0.25, 0.125, 0.0625}, 3);
  const std::string csv = table.csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "delta,err_q1,err_q2,err_q3,rate_q1,rate_q2,rate_q3");
  // The first data row has no previous step, so its rates are blank.
  const auto first = csv.substr(csv.find('\n') + 1);
  EXPECT_NE(first.find(",,,"), std::string::npos);
}

TEST(Convergence, RejectsShortOrUnsortedSteps) {
  EXPECT_THROW(convergence_study(linear_field(), {0.1, 0.05}, 3), Error);
  EXPECT_THROW(convergence_study(linear_field(), {0.1, 0.2, 0.05}, 3), Error);
}

TEST(Expm, AgainstClosedForms) {
  const DMatrix nil = to_double(X);
  const DMatrix e = expm(nil);
  EXPECT_DOUBLE_EQ(e(0, 0), 1);
  EXPECT_DOUBLE_EQ(e(0, 1), 1);
  EXPECT_DOUBLE_EQ(e(1, 0), 0);
  DMatrix rot = DMatrix::from_rows({{0, -1}, {1, 0}});
  rot *= 3.0;
  const DMatrix r = expm(rot);
  EXPECT_NEAR(r(0, 0), std::cos(3.0), 1e-13);
  EXPECT_NEAR(r(1, 0), std::sin(3.0), 1e-13);
}

TEST(OpenEvolution, ConstantFieldExponential) {
  const PolyField a = PolyField::constant(X + Rational(1, 2) * Y);
  const DMatrix k = DMatrix::identity(2);
  EXPECT_LE(open_evolution_residual(a, k, 0.7, 1.0, 1e-4, OpenMethod::Exponential),
            1e-6);
  EXPECT_EQ(open_evolution_residual(a, k, 0.0, 1.0, 1e-4, OpenMethod::Exponential),
            0.0);
}

TEST(OpenEvolution, TruncatedSeriesResidualHalves) {
  const PolyField a = linear_field();
  const DMatrix k = to_double(QMatrix::from_rows({{2, 1}, {0, 1}}));
  const double r1 = open_evolution_residual(a, k, 0.5, 1.0, 1e-2,
                                            OpenMethod::TruncatedSeries);
  const double r2 = open_evolution_residual(a, k, 0.5, 1.0, 5e-3,
                                            OpenMethod::TruncatedSeries);
  EXPECT_GT(r1, 0);
  EXPECT_NEAR(r1 / r2, 2.0, 0.2);
}

TEST(OpenEvolution, ExactSeriesResiduals) {
  const PolyField a = linear_field();
  const PolyField a_hat = parse_field_spec("poly(H - x*X;dim=2)");
  EXPECT_TRUE(open_series_residual(a, QMatrix::from_rows({{2, 1}, {0, 1}}), 4)
                  .is_zero());
  EXPECT_TRUE(gauge_series_residual(a, a_hat, QMatrix::from_rows({{1, 1}, {0, 1}}), 4)
                  .is_zero());
}

TEST(GaugeEvolution, ResidualHalves) {
  const PolyField a = linear_field();
  const PolyField a_hat = parse_field_spec("poly(H - x*X;dim=2)");
  const DMatrix g0 = DMatrix::identity(2);
  const double r1 = gauge_evolution_residual(a, a_hat, g0, 0.5, 1.0, 1e-2);
  const double r2 = gauge_evolution_residual(a, a_hat, g0, 0.5, 1.0, 5e-3);
  EXPECT_NEAR(r1 / r2, 2.0, 0.2);
}
