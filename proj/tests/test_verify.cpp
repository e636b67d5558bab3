#include <sdpoly/closed_form.hpp>
#include <sdpoly/error.hpp>
#include <sdpoly/funceq.hpp>
#include <sdpoly/verify.hpp>

#include <gtest/gtest.h>

using namespace sdpoly;
using namespace sdpoly::verify;

namespace
{

const WPoly w = WPoly::w();

} // namespace

TEST(FirstMismatch, LowestNThenLowestK)
{
    QSeries a(6), b(6);
    a.set(4, w * WPoly(3) + 1);
    b.set(4, w * WPoly(5) + 1);
    b.set(5, WPoly(9));
    const auto m = first_mismatch(a, b);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->n, 4);
    EXPECT_EQ(m->k, 1);
    EXPECT_EQ(m->expected, "3");
    EXPECT_EQ(m->got, "5");
    EXPECT_EQ(describe(*m), "n=4 k=1 expected 3 got 5");
    EXPECT_FALSE(first_mismatch(a, a).has_value());
    EXPECT_THROW(first_mismatch(QSeries(3), QSeries(4)), OrderMismatch);
}

TEST(FirstMismatch, FixedWOmitsK)
{
    const auto m = first_mismatch(QSeries::polynomial({0, 1, 2}, 3), QSeries::polynomial({0, 1, 3}, 3));
    ASSERT_TRUE(m.has_value());
    EXPECT_FALSE(m->k.has_value());
    EXPECT_EQ(describe(*m), "n=2 expected 2 got 3");
}

TEST(Sparsity, DetectsViolation)
{
    QSeries s(12);
    s.set(7, w.pow(2));
    EXPECT_FALSE(sparsity_violation(s).has_value());
    s.set(11, w.pow(3));
    const auto v = sparsity_violation(s);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->n, 11);
    EXPECT_EQ(v->k, 3);
}

TEST(Sparsity, BoundHoldsOnOracleRangeButNotBeyond)
{
    const auto g = closed_form::assemble(16, w).g;
    EXPECT_FALSE(sparsity_violation(g.truncated(14)).has_value());
    const auto v = sparsity_violation(g);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->n, 15);
    EXPECT_EQ(v->k, 4);
    EXPECT_EQ(v->got, "4");
}

TEST(Run, SmallPipelinePasses)
{
    Options o;
    o.order = 12;
    o.oracle_max = 8;
    const auto r = run(o);
    for (const auto &c : r.checks)
        EXPECT_TRUE(c.pass) << c.name << (c.mismatch ? ": " + describe(*c.mismatch) : "");
    EXPECT_TRUE(r.all_pass());
    EXPECT_EQ(r.first_failure(), nullptr);
}

TEST(Run, ReportsOracleLine)
{
    Options o;
    o.order = 5;
    o.oracle_max = 5;
    const auto r = run(o);
    bool found = false;
    for (const auto &c : r.checks)
        for (const auto &l : c.lines)
            found = found || l == "oracle n=5: 63 = closed-form 63";
    EXPECT_TRUE(found);
}

TEST(Run, FixedWAndRationalCheck)
{
    Options o;
    o.order = 20;
    o.w = WPoly(0);
    o.oracle_max = 6;
    const auto r = run(o);
    EXPECT_TRUE(r.all_pass());
    bool rational = false;
    for (const auto &c : r.checks)
        rational = rational || c.name == "closed-form at w=0 = rational expansion";
    EXPECT_TRUE(rational);
}

TEST(Run, Refusals)
{
    Options o;
    o.order = 5;
    o.oracle_max = 15;
    EXPECT_THROW(run(o), ResourceError);
    o.oracle_max = 0;
    o.order = 0;
    EXPECT_THROW(run(o), std::invalid_argument);
}

// Flipping the sign of one numerator term must be caught at the lowest
// q-degree that term touches.
TEST(Canary, EveryNumeratorTermIsCaughtAtItsLowestOrder)
{
    const int N = 24;
    const auto fam = closed_form::tilde_family(N, w);
    const auto reference = funceq::fixed_point_solve(N, w).g;
    const auto &num = closed_form::num_terms();
    int exercised = 0;
    for (std::size_t i = 0; i < num.size(); ++i)
    {
        const auto term = closed_form::evaluate_terms(std::span(&num[i], 1), fam, N, w);
        if (term.is_zero())
            continue;
        auto corrupted = num;
        corrupted[i].coefficient = -corrupted[i].coefficient;
        const auto g = closed_form::assemble_from(corrupted, closed_form::den_terms(), N, w).g;
        const auto m = first_mismatch(reference, g);
        ASSERT_TRUE(m.has_value()) << "term " << i;
        EXPECT_EQ(m->n, term.valuation()) << "term " << i;
        ++exercised;
    }
    EXPECT_GT(exercised, 0);
}

TEST(Canary, RunReportsTheCounterexample)
{
    auto corrupted = closed_form::num_terms();
    corrupted.front().coefficient = -corrupted.front().coefficient;
    Options o;
    o.order = 12;
    o.num = corrupted;
    const auto r = run(o);
    EXPECT_FALSE(r.all_pass());
    const Check *f = r.first_failure();
    ASSERT_NE(f, nullptr);
    ASSERT_TRUE(f->mismatch.has_value());
    EXPECT_EQ(f->name, "closed-form G = funceq G");
    EXPECT_EQ(f->mismatch->n, 1);
    EXPECT_EQ(f->mismatch->k, 0);
}
