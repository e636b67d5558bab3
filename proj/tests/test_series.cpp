#include <sdpoly/error.hpp>
#include <sdpoly/qseries.hpp>
#include <sdpoly/qtseries.hpp>
#include <sdpoly/tjet.hpp>

#include "support/ring_laws.hpp"

#include <gtest/gtest.h>

using namespace sdpoly;

namespace
{

QSeries poly(std::initializer_list<long> c, int order) { return QSeries::polynomial(c, order); }
const WPoly w = WPoly::w();

} // namespace

TEST(WPoly, ArithmeticAndRendering)
{
    WPoly a = WPoly(750) + WPoly::monomial(1, 8);
    EXPECT_EQ(a.to_string(), "750 + 8*w");
    EXPECT_EQ(WPoly::monomial(2, Rational(1, 2)).to_string(), "1/2*w^2");
    EXPECT_EQ((a - a).degree(), -1);
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((w + 1).pow(2), WPoly(1) + w * WPoly(2) + w.pow(2));
    EXPECT_EQ(a.eval(1), 758);
    EXPECT_EQ((w + 1).pow(5).truncated(1), WPoly(1) + w * WPoly(5));
    EXPECT_EQ(WPoly::mul_truncated(w + 1, w + 1, 1), WPoly(1) + w * WPoly(2));
}

TEST(QSeries, AddExamples)
{
    EXPECT_EQ(poly({1, 1}, 4) + poly({1, -1}, 4), QSeries::constant(2, 4));
    const QSeries f = poly({3, 0, 5}, 4);
    EXPECT_EQ(f + QSeries(4), f);
    QSeries qw = QSeries::monomial(1, w, 4);
    EXPECT_EQ(qw + QSeries::monomial(1, 1, 4), QSeries::monomial(1, w + 1, 4));
}

TEST(QSeries, MulExamples)
{
    EXPECT_EQ(poly({1, 1}, 4) * poly({1, -1}, 4), poly({1, 0, -1}, 4));
    EXPECT_EQ(poly({1, -1}, 4) * poly({1, 1, 1, 1, 1}, 4), QSeries::one(4));
    EXPECT_TRUE((QSeries::monomial(2, 1, 3) * QSeries::monomial(3, 1, 3)).is_zero());
}

TEST(QSeries, InvExamples)
{
    EXPECT_EQ(inv(poly({1, -1}, 3)), poly({1, 1, 1, 1}, 3));
    EXPECT_EQ(inv(QSeries::one(5)), QSeries::one(5));
    EXPECT_EQ(inv(poly({1, -3}, 2)), poly({1, 3, 9}, 2));
}

TEST(QSeries, InvRejectsNonUnits)
{
    EXPECT_THROW(inv(poly({0, 1}, 3)), NotAUnit);
    EXPECT_THROW(inv(QSeries::constant(w + 1, 3)), NotAUnit);
    EXPECT_THROW(inv(QSeries::constant(w, 3)), NotAUnit);
}

TEST(QSeries, GeomExamples)
{
    EXPECT_EQ(geom(2, 6), poly({1, 0, 1, 0, 1, 0, 1}, 6));
    EXPECT_EQ(geom(1, 3), poly({1, 1, 1, 1}, 3));
    EXPECT_EQ(geom(7, 5), QSeries::one(5));
    EXPECT_THROW(geom(0, 5), std::invalid_argument);
    EXPECT_EQ(one_minus_q_pow_neg(2, 4), poly({1, 2, 3, 4, 5}, 4));
}

TEST(QSeries, MismatchedOrdersAreRejected)
{
    EXPECT_THROW(poly({1}, 3) + poly({1}, 4), OrderMismatch);
    EXPECT_THROW(poly({1}, 3) * poly({1}, 4), OrderMismatch);
    EXPECT_THROW(mul_serial(poly({1}, 3), poly({1}, 4)), OrderMismatch);
}

TEST(QSeries, LinearTimeHelpers)
{
    QSeries a = poly({1, 2, 3}, 6);
    QSeries b = a;
    b.div_one_minus_qk(2);
    EXPECT_EQ(b, a * geom(2, 6));
    b.mul_one_minus_qk(2);
    EXPECT_EQ(b, a);
    QSeries c = a;
    c.shift(2);
    EXPECT_EQ(c, poly({0, 0, 1, 2, 3}, 6));
}

TEST(QSeries, WCapIsQuotientTruncation)
{
    QSeries s(4, 1);
    s.set(1, w.pow(3) + w + 1);
    EXPECT_EQ(s[1], w + 1);
    EXPECT_EQ(default_wcap(320), 160);
    EXPECT_EQ(default_wcap(0), 0);
}

TEST(QSeries, EvalW)
{
    QSeries s = QSeries::monomial(2, w * WPoly(3) + 1, 4);
    EXPECT_EQ(s.eval_w(2)[2], WPoly(7));
}

TEST(QTSeries, SubstExamples)
{
    const int N = 6;
    // t and q t^2 lie outside the stored triangle; q t and q^3 t^2 stand in.
    EXPECT_EQ(subst_qt(QTSeries::monomial(1, 1, 1, N)), QTSeries::monomial(2, 1, 1, N));
    EXPECT_EQ(subst_qt(QTSeries::monomial(3, 2, 1, N)), QTSeries::monomial(5, 2, 1, N));
    const QTSeries c = QTSeries::monomial(0, 0, 7, N);
    EXPECT_EQ(subst_qt(c), c);
}

TEST(QTSeries, TriangleInvariant)
{
    QTSeries a(4);
    EXPECT_THROW(a.set(1, 2, 1), std::invalid_argument);
    EXPECT_NO_THROW(a.set(1, 2, 0));
    EXPECT_TRUE(a.coeff(1, 3).is_zero());
    EXPECT_THROW(QTSeries::monomial(1, 2, 1, 4), std::invalid_argument);
}

TEST(QTSeries, DivOneMinusMatchesGeometricRows)
{
    QTSeries a = QTSeries::monomial(1, 1, 1, 6);
    a.div_one_minus(1, 1);
    // q t / (1 - q t) = sum q^m t^m
    for (int m = 1; m <= 6; ++m)
        EXPECT_EQ(a.coeff(m, m), WPoly(1));
    EXPECT_TRUE(a.coeff(3, 2).is_zero());
    a.mul_one_minus(1, 1);
    EXPECT_EQ(a, QTSeries::monomial(1, 1, 1, 6));
}

TEST(TJet, MulExamples)
{
    const int N = 5;
    const TJet t(QSeries::one(N), QSeries::one(N), QSeries(N));
    EXPECT_EQ(jet_mul(t, t), TJet(QSeries::one(N), QSeries::constant(2, N), QSeries::one(N)));
    const TJet unit = TJet::constant(QSeries::one(N));
    EXPECT_EQ(jet_mul(t, unit), t);

    // 1/(1 - q t) at t = 1 is (g, q g^2, q^2 g^3) with g = 1/(1 - q).
    const QSeries g = geom(1, N);
    QTSeries inv_qt = QTSeries::monomial(0, 0, 1, N);
    inv_qt.div_one_minus(1, 1);
    const TJet j = jet_of(inv_qt);
    EXPECT_EQ(j, TJet(g, QSeries::monomial(1, 1, N) * g * g, QSeries::monomial(2, 1, N) * g * g * g));
    const TJet one_minus_qt(poly({1, -1}, N), poly({0, -1}, N), QSeries(N));
    EXPECT_EQ(jet_mul(j, one_minus_qt), unit);
    EXPECT_THROW(TJet(QSeries(3), QSeries(4), QSeries(3)), OrderMismatch);
}

TEST(TJet, JetAtOneExamples)
{
    const int N = 4;
    QTSeries a = QTSeries::monomial(1, 1, 1, N) + QTSeries::monomial(2, 2, 1, N);
    EXPECT_EQ(jet_at_1(a), TJet(poly({0, 1, 1}, N), poly({0, 0, 1}, N), QSeries(N)));
    EXPECT_EQ(jet_at_1(QTSeries::monomial(3, 3, 1, N)).f2, QSeries::monomial(3, 1, N));
    EXPECT_EQ(jet_at_1(QTSeries::monomial(1, 1, 1, N)), TJet(poly({0, 1}, N), QSeries(N), QSeries(N)));
}

TEST(Kernels, SerialMatchesParallelOnWideOperands)
{
    proptest::SeriesGen gen(7);
    for (int order : {1, 17, 64, 120})
    {
        auto a = gen.series(order), b = gen.series(order);
        EXPECT_EQ(mul_serial(a, b), mul(a, b)) << "order " << order;
    }
}

TEST(Properties, RingLawsHold)
{
    for (const auto &r : proptest::check_ring_laws(1000, 64, 20241019))
    {
        EXPECT_GE(r.cases, 1000) << r.name;
        EXPECT_EQ(r.failures, 0) << r.name << ": " << r.first_failure;
    }
}

namespace
{

QTSeries random_qt(proptest::SeriesGen &gen, int order)
{
    QTSeries a(order);
    for (int m = 0; m <= order; ++m)
    {
        const QSeries row = gen.series(order);
        for (int n = m; n <= order; ++n)
            a.set(n, m, row[n]);
    }
    return a;
}

} // namespace

TEST(Properties, JetsAreLinearAndMultiplicative)
{
    proptest::SeriesGen gen(99);
    for (int i = 0; i < 200; ++i)
    {
        const int n = gen.order(16);
        const QTSeries a = random_qt(gen, n), b = random_qt(gen, n);
        ASSERT_EQ(jet_of(a + b), jet_of(a) + jet_of(b));
        ASSERT_EQ(jet_at_1(a - b), jet_at_1(a) - jet_at_1(b));
        ASSERT_EQ(jet_of(mul(a, b)), jet_mul(jet_of(a), jet_of(b)));
    }
}

TEST(Properties, SubstitutionIsARingMap)
{
    proptest::SeriesGen gen(5);
    for (int i = 0; i < 200; ++i)
    {
        const int n = gen.order(16);
        const QTSeries a = random_qt(gen, n), b = random_qt(gen, n);
        ASSERT_EQ(subst_qt(a + b), subst_qt(a) + subst_qt(b));
        ASSERT_EQ(subst_qt(mul(a, b)), mul(subst_qt(a), subst_qt(b)));
    }
}
