#include <sdpoly/closed_form.hpp>
#include <sdpoly/error.hpp>
#include <sdpoly/funceq.hpp>

#include <gtest/gtest.h>

using namespace sdpoly;
using namespace sdpoly::funceq;

namespace
{

const WPoly w = WPoly::w();

// q t / (1 - q t)
QTSeries single_columns(int order)
{
    QTSeries a = QTSeries::monomial(1, 1, 1, order);
    return a.div_one_minus(1, 1);
}

} // namespace

TEST(ApplyFactor, MatchesExplicitProducts)
{
    const int N = 10;
    const QTSeries x = QTSeries::monomial(1, 1, 1, N);
    QTSeries expected = x;
    expected.mul_monomial(2, 1, w).div_one_minus(1, 0).div_one_minus(1, 0).div_one_minus(1, 1);
    EXPECT_EQ(apply_factor(x, 2, 1, w, 2, 1), expected);
}

TEST(Rhs, ZeroInputLeavesConstantTerms)
{
    const int N = 14;
    const TJet zero{QSeries(N), QSeries(N), QSeries(N)};
    const QTSeries rhs = functional_rhs(QTSeries(N), zero, N, w);
    QTSeries expected = single_columns(N);
    expected += apply_factor(QTSeries::monomial(0, 0, 1, N), 5, 3, w, 2, 3);
    EXPECT_EQ(rhs, expected);
    EXPECT_EQ(functional_rhs(QTSeries(N), zero, N, WPoly(0)), single_columns(N));
}

TEST(Rhs, ConvergedSolutionIsAFixedPoint)
{
    const int N = 16;
    const auto sol = fixed_point_solve(N, WPoly(1));
    const QTSeries rhs = functional_rhs(sol.a_t, jet_at_1(sol.a_t), N, WPoly(1));
    EXPECT_EQ(rhs, sol.a_t);
    EXPECT_EQ(jet_at_1(rhs).f0[2], WPoly(2));
}

TEST(FixedPoint, KnownCoefficients)
{
    const std::vector<long> expected = {1, 2, 6, 19, 63, 216, 758, 2693};
    const auto sol = fixed_point_solve(8, WPoly(1));
    for (int n = 1; n <= 8; ++n)
        EXPECT_EQ(sol.g[n], WPoly(expected[n - 1])) << "n=" << n;
    EXPECT_LE(sol.iterations, 8 + 2);
}

TEST(FixedPoint, JetSpotValues)
{
    const auto sol = fixed_point_solve(8, w);
    EXPECT_EQ(sol.a1[5].eval(1), 62);
    EXPECT_EQ(sol.b1[2], WPoly(1));
    EXPECT_EQ(sol.g, g_from_jets(sol.a1, sol.c1, w));
}

TEST(FixedPoint, ObserverSeesEveryIterate)
{
    int calls = 0;
    const auto sol = fixed_point_solve(10, w, [&](int, const QTSeries &) { ++calls; });
    EXPECT_EQ(calls, sol.iterations);
}

TEST(FixedPoint, AgreesWithClosedFormSymbolically)
{
    const int N = 30;
    EXPECT_EQ(fixed_point_solve(N, w).g, closed_form::assemble(N, w).g);
}

TEST(SDecomposition, AlphaPartExamples)
{
    const int N = 12;
    const auto sol0 = fixed_point_solve(N, WPoly(0));
    EXPECT_EQ(s_parts(sol0, N, WPoly(0))[SPart::alpha], single_columns(N));

    const auto sol = fixed_point_solve(N, w);
    const QTSeries alpha = s_parts(sol, N, w)[SPart::alpha];
    // Lowest w-carrying term.
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m <= n; ++m)
            EXPECT_EQ(alpha.coeff(n, m).degree() <= 0, true) << n << "," << m;
    EXPECT_EQ(alpha.coeff(5, 3).coeff(1), 1);
    for (int m = 0; m <= 5; ++m)
        if (m != 3)
            EXPECT_EQ(alpha.coeff(5, m).coeff(1), 0);
}

TEST(SDecomposition, PartsSumToA)
{
    const int N = 20;
    const auto sol = fixed_point_solve(N, w);
    EXPECT_EQ(s_parts(sol, N, w).sum(), sol.a_t);
}

TEST(SDecomposition, MirrorPartsCoincide)
{
    const int N = 16;
    const auto sol = fixed_point_solve(N, w);
    const auto parts = s_parts(sol, N, w);
    for (auto [a, b] : kMirrorPairs)
        EXPECT_EQ(parts[a], parts[b]);
}

TEST(IteratedForm, IteratedFormRebuildsA)
{
    const int N = 20;
    const auto sol = fixed_point_solve(N, w);
    const auto rep = unrolled_check(sol, N, w);
    EXPECT_TRUE(rep.equal);
    EXPECT_FALSE(rep.first_mismatch.has_value());
    EXPECT_EQ(rep.rebuilt, sol.a_t);
}

TEST(IteratedForm, FirstSumStartsWithSingleColumns)
{
    // The i = 2 term of the first sum starts at q^6.
    EXPECT_EQ(unrolled_sum(1, 5, w), single_columns(5));
    EXPECT_NE(unrolled_sum(1, 6, w), single_columns(6));
}

TEST(IteratedForm, DetectsACorruptedSolution)
{
    const int N = 12;
    auto sol = fixed_point_solve(N, w);
    sol.a_t += QTSeries::monomial(9, 2, 1, N);
    const auto rep = unrolled_check(sol, N, w);
    EXPECT_FALSE(rep.equal);
    ASSERT_TRUE(rep.first_mismatch.has_value());
    EXPECT_EQ(*rep.first_mismatch, std::make_pair(9, 2));
}
