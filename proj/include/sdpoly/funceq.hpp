#pragma once

#include <sdpoly/partition.hpp>
#include <sdpoly/qtseries.hpp>
#include <sdpoly/tjet.hpp>

#include <array>
#include <functional>
#include <optional>

namespace sdpoly::funceq
{

struct FunceqSolution
{
    QTSeries a_t; // A(q, t, w)
    QSeries a1;
    QSeries b1;
    QSeries c1;
    QSeries g;
    int iterations = 0;
};

// c * q^qdeg t^tdeg / ((1-q)^pow_q (1-qt)^pow_qt) times x.
QTSeries apply_factor(QTSeries x, int qdeg, int tdeg, const WPoly &c, int pow_q, int pow_qt);

// G = A1 + q^2 w / (1-q)^2 * C1.
QSeries g_from_jets(const QSeries &a1, const QSeries &c1, const WPoly &w);

// Right-hand side of the functional equation for A(t), evaluated at the given
// A(t) and jets (A1, B1, C1); A(qt) is formed by substitution.
QTSeries functional_rhs(const QTSeries &a, const TJet &jets, int order, const WPoly &w);

using IterateObserver = std::function<void(int iteration, const QTSeries &iterate)>;

// Iterates a <- functional_rhs(a, jet_at_1(a)) from a = 0 until two successive
// iterates coincide. Throws InternalError if that takes more than order + 2 steps.
FunceqSolution fixed_point_solve(int order, const WPoly &w, const IterateObserver &observer = {});

struct SParts
{
    std::array<QTSeries, 12> parts;
    const QTSeries &operator[](SPart p) const { return parts[static_cast<std::size_t>(p)]; }
    QTSeries sum() const;
};

// Evaluates the twelve per-block formulas at a converged solution.
SParts s_parts(const FunceqSolution &sol, int order, const WPoly &w);

struct UnrolledReport
{
    bool equal = false;
    // The four i-indexed sums multiplying the brackets.
    std::array<QTSeries, 4> sums;
    QTSeries rebuilt;
    // First (n, m) where rebuilt and a_t differ.
    std::optional<std::pair<int, int>> first_mismatch;
};

// Rebuilds A(t) from the iterated (kernel-unrolled) form and compares it with sol.a_t.
UnrolledReport unrolled_check(const FunceqSolution &sol, int order, const WPoly &w);

// The i-th (1-based) sum of the unrolled form, cut once its lowest q-degree exceeds order.
QTSeries unrolled_sum(int which, int order, const WPoly &w);

} // namespace sdpoly::funceq
