#include <sdpoly/error.hpp>
#include <sdpoly/funceq.hpp>
#include <sdpoly/oracle.hpp>
#include <sdpoly/tjet.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

using namespace sdpoly;
using namespace sdpoly::oracle;

namespace
{

Polyomino cells(std::vector<Cell> c) { return Polyomino::from_cells(std::move(c)); }

class CeilingEnv
{
public:
    explicit CeilingEnv(const char *value) { setenv("SDPOLY_ORACLE_CEILING", value, 1); }
    ~CeilingEnv() { unsetenv("SDPOLY_ORACLE_CEILING"); }
};

const CountTable &table10()
{
    static const CountTable t = enumerate(10);
    return t;
}

} // namespace

TEST(Polyomino, NormalizesAndValidates)
{
    const auto p = cells({{5, 7}, {5, 8}});
    EXPECT_EQ(p.cells(), (std::vector<Cell>{{0, 0}, {0, 1}}));
    EXPECT_THROW(cells({}), std::invalid_argument);
    EXPECT_THROW(cells({{0, 0}, {0, 0}}), std::invalid_argument);
    EXPECT_THROW(cells({{0, 0}, {1, 1}}), std::invalid_argument);
    EXPECT_EQ(cells({{0, 0}, {1, 0}, {1, 1}}).mirrored(), cells({{0, 1}, {1, 0}, {1, 1}}));
}

TEST(Classify, UPentomino)
{
    const auto c = classify(cells({{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 2}}));
    EXPECT_TRUE(c.has(Label::simplex_duplex));
    EXPECT_TRUE(c.has(Label::column_duplex));
    EXPECT_FALSE(c.has(Label::column_convex));
    EXPECT_TRUE(c.has(Label::ends_duplex));
    EXPECT_FALSE(c.has(Label::s));
    EXPECT_EQ(c.decomposition.duplex_count, 1);
    EXPECT_FALSE(c.part.has_value());
}

TEST(Classify, MirroredUPentominoIsInSAlpha)
{
    const auto c = classify(cells({{0, 0}, {0, 2}, {1, 0}, {1, 1}, {1, 2}}));
    EXPECT_TRUE(c.has(Label::s));
    EXPECT_EQ(c.decomposition.duplex_count, 1);
    EXPECT_EQ(c.part, SPart::alpha);
    EXPECT_EQ(c.part_matches, 1);
}

TEST(Classify, VerticalBar)
{
    for (int h = 1; h <= 6; ++h)
    {
        std::vector<Cell> bar;
        for (int y = 0; y < h; ++y)
            bar.push_back({0, y});
        const auto c = classify(cells(bar));
        EXPECT_TRUE(c.has(Label::column_convex));
        EXPECT_EQ(c.part, SPart::alpha);
        EXPECT_EQ(c.decomposition.last_height, h);
    }
}

TEST(Classify, NotColumnDuplex)
{
    // Three components in column 0.
    const auto c = classify(cells({{0, 0}, {0, 2}, {0, 4}, {1, 0}, {1, 1}, {1, 2}, {1, 3}, {1, 4}}));
    EXPECT_FALSE(c.has(Label::column_duplex));
    EXPECT_FALSE(c.has(Label::simplex_duplex));
    EXPECT_TRUE(c.has(Label::all));
}

TEST(Columns, SecondLastAccessorsDiffer)
{
    // simplex, duplex, simplex
    const std::vector<std::uint64_t> cols = {0b111, 0b101, 0b111};
    EXPECT_EQ(columns::second_last(cols), 1);
    EXPECT_EQ(columns::second_last_simplex(cols), 0);
    EXPECT_EQ(columns::last_duplex(cols), 1);
    EXPECT_EQ(columns::component_count(0b1011), 2);
}

TEST(Enumerate, SmallAreas)
{
    const auto &t = table10();
    EXPECT_EQ(t.count(1, Label::all), 1u);
    EXPECT_EQ(t.count(1, 0, Label::simplex_duplex), 1u);
    EXPECT_EQ(t.count(3, Label::all), 6u);
    EXPECT_EQ(t.count(3, Label::simplex_duplex), 6u);
    EXPECT_EQ(t.count(5, Label::simplex_duplex), 63u);
    EXPECT_EQ(t.count(5, 1, Label::simplex_duplex), 2u);
    EXPECT_EQ(t.count(6, Label::simplex_duplex), 216u);
    const std::vector<std::uint64_t> fixed = {1, 2, 6, 19, 63, 216, 760, 2725, 9910, 36446};
    for (int n = 1; n <= 10; ++n)
        EXPECT_EQ(t.count(n, Label::all), fixed[n - 1]) << "n=" << n;
    EXPECT_EQ(t.unclassified(), 0u);
    EXPECT_EQ(t.multiply_classified(), 0u);
}

TEST(Enumerate, SerialAndParallelAgree)
{
    EXPECT_EQ(enumerate(10, {.parallel = false}), enumerate(10, {.parallel = true}));
}

TEST(Enumerate, UniquenessAudit)
{
    EXPECT_NO_THROW(enumerate(9, {.parallel = true, .uniqueness_audit = true}));
    EXPECT_NO_THROW(enumerate(8, {.parallel = false, .uniqueness_audit = true}));
}

TEST(Enumerate, VisitorSeesEachPolyominoOnce)
{
    std::set<std::vector<Cell>> seen;
    std::uint64_t visits = 0;
    for_each_polyomino(7, [&](const Polyomino &p, const Classification &) {
        seen.insert(p.cells());
        ++visits;
    });
    EXPECT_EQ(visits, seen.size());
    EXPECT_EQ(visits, 1u + 2 + 6 + 19 + 63 + 216 + 760);
}

TEST(Enumerate, CeilingAndArguments)
{
    EXPECT_EQ(ceiling(), 14);
    EXPECT_THROW(enumerate(15), ResourceError);
    EXPECT_THROW(enumerate(0), std::invalid_argument);
    {
        CeilingEnv env("5");
        EXPECT_EQ(ceiling(), 5);
        EXPECT_THROW(enumerate(6), ResourceError);
        EXPECT_NO_THROW(enumerate(5));
    }
    {
        CeilingEnv env("lots");
        EXPECT_EQ(ceiling(), 14);
    }
}

TEST(Enumerate, MirrorPreservesColumnFacts)
{
    for_each_polyomino(8, [](const Polyomino &p, const Classification &c) {
        const auto m = classify(p.mirrored());
        const std::uint32_t structural = (1u << static_cast<int>(Label::column_convex)) |
                                         (1u << static_cast<int>(Label::column_duplex)) |
                                         (1u << static_cast<int>(Label::simplex_duplex)) |
                                         (1u << static_cast<int>(Label::s)) | (1u << static_cast<int>(Label::ends_duplex));
        ASSERT_EQ(c.labels & structural, m.labels & structural);
        ASSERT_EQ(c.decomposition.duplex_count, m.decomposition.duplex_count);
        ASSERT_EQ(c.decomposition.last_height, m.decomposition.last_height);
    });
}

TEST(Enumerate, MirrorPairCounts)
{
    const auto &t = table10();
    for (auto [a, b] : kMirrorPairs)
        for (int n = 1; n <= 10; ++n)
            for (int k = 0; k <= n; ++k)
                for (int h = 0; h <= n; ++h)
                    ASSERT_EQ(t.count(n, k, h, part_label(a)), t.count(n, k, h, part_label(b)))
                        << part_name(a) << "/" << part_name(b) << " n=" << n << " k=" << k << " h=" << h;
}

TEST(RefinedSeries, MatchesKnownValues)
{
    const auto &t = table10();
    const auto sd = refined_series(t, Label::simplex_duplex, 8, WPoly(1));
    const std::vector<long> expected = {1, 2, 6, 19, 63, 216, 758, 2693};
    for (int n = 1; n <= 8; ++n)
        EXPECT_EQ(sd[n], WPoly(expected[n - 1]));
    const auto cc = refined_series(t, Label::column_convex, 5, WPoly(1));
    EXPECT_EQ(cc, QSeries::polynomial({0, 1, 2, 6, 19, 61}, 5));
    EXPECT_THROW(refined_series(t, Label::all, 11, WPoly(1)), std::invalid_argument);
    EXPECT_THROW(refined_series_qt(t, Label::s, 11, WPoly(1)), std::invalid_argument);
}

TEST(RefinedSeries, SJetsMatchFunceq)
{
    const auto &t = table10();
    const WPoly w = WPoly::w();
    const auto a = refined_series_qt(t, Label::s, 10, w);
    const auto sol = funceq::fixed_point_solve(10, w);
    EXPECT_EQ(a, sol.a_t);
    const TJet j = jet_at_1(a);
    EXPECT_EQ(j.f0, sol.a1);
    EXPECT_EQ(j.f1, sol.b1);
    EXPECT_EQ(j.f2, sol.c1);
}

TEST(Labels, NamesRoundTrip)
{
    for (int l = 0; l < kLabelCount; ++l)
        EXPECT_EQ(label_from_name(label_name(static_cast<Label>(l))), static_cast<Label>(l));
    EXPECT_THROW(label_from_name("nope"), std::invalid_argument);
}

TEST(Dump, LineFormat)
{
    const auto p = cells({{0, 0}});
    EXPECT_EQ(dump_line(p, classify(p)), "(0,0) | all column-convex column-duplex simplex-duplex S S-alpha k=0 h=1");
}
