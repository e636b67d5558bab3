#include <sdpoly/error.hpp>
#include <sdpoly/funceq.hpp>

#include <string>

namespace sdpoly::funceq
{

namespace
{

QSeries rational_in_q(int qdeg, const WPoly &c, int pow_q, int order)
{
    QSeries s = QSeries::monomial(qdeg, c, order);
    for (int i = 0; i < pow_q; ++i)
        s.div_one_minus_qk(1);
    return s;
}

Integer power_of_minus_three(int e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, static_cast<unsigned long>(e));
    return e % 2 ? Integer(-r) : r;
}

// The brackets multiplying the t-dependent kernels:
// X = 1 + B1 + 2q^3 w/(1-q)^3 C1, Y = A1 + 2q^2 w/(1-q)^2 C1, Z = 1 + 2/(1-q) A1 - B1.
struct Brackets
{
    QSeries x, y, z;
};

Brackets brackets(const TJet &jets, int order, const WPoly &w)
{
    const QSeries one = QSeries::one(order);
    const QSeries &a1 = jets.f0;
    const QSeries &b1 = jets.f1;
    const QSeries &c1 = jets.f2;
    Brackets br;
    br.x = one + b1 + mul(rational_in_q(3, w * Rational(2), 3, order), c1);
    br.y = a1 + mul(rational_in_q(2, w * Rational(2), 2, order), c1);
    br.z = one + mul(rational_in_q(0, WPoly(2), 1, order), a1) - b1;
    return br;
}

} // namespace

QTSeries apply_factor(QTSeries x, int qdeg, int tdeg, const WPoly &c, int pow_q, int pow_qt)
{
    x.mul_monomial(qdeg, tdeg, c);
    for (int i = 0; i < pow_q; ++i)
        x.div_one_minus(1, 0);
    for (int i = 0; i < pow_qt; ++i)
        x.div_one_minus(1, 1);
    return x;
}

QSeries g_from_jets(const QSeries &a1, const QSeries &c1, const WPoly &w)
{
    return a1 + mul(rational_in_q(2, w, 2, a1.order()), c1);
}

QTSeries functional_rhs(const QTSeries &a, const TJet &jets, int order, const WPoly &w)
{
    const Brackets br = brackets(jets, order, w);
    const WPoly one(1);
    QTSeries r = apply_factor(QTSeries::from_qseries(br.x), 1, 1, one, 0, 1);
    r += apply_factor(QTSeries::from_qseries(br.y), 1, 1, one, 0, 2);
    r += apply_factor(QTSeries::from_qseries(br.z), 5, 3, w, 2, 3);
    r += apply_factor(QTSeries::from_qseries(jets.f0), 5, 3, w * Rational(3), 2, 4);
    r += apply_factor(subst_qt(a), 4, 2, w * Rational(-3), 2, 4);
    return r;
}

FunceqSolution fixed_point_solve(int order, const WPoly &w, const IterateObserver &observer)
{
    if (order < 0)
        throw std::invalid_argument("fixed_point_solve: negative order");
    // Every A-dependent term carries a factor of q, so iterate k is exact
    // through q^k and at most order + 1 steps change anything.
    const int limit = order + 2;
    QTSeries a(order);
    for (int k = 1; k <= limit; ++k)
    {
        QTSeries next = functional_rhs(a, jet_at_1(a), order, w);
        if (observer)
            observer(k, next);
        if (next == a)
        {
            FunceqSolution sol;
            sol.a_t = std::move(a);
            TJet jets = jet_at_1(sol.a_t);
            sol.a1 = std::move(jets.f0);
            sol.b1 = std::move(jets.f1);
            sol.c1 = std::move(jets.f2);
            sol.g = g_from_jets(sol.a1, sol.c1, w);
            sol.iterations = k;
            return sol;
        }
        a = std::move(next);
    }
    throw InternalError("fixed_point_solve: no fixed point after " + std::to_string(limit) + " iterations");
}

QTSeries SParts::sum() const
{
    QTSeries s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        s += parts[i];
    return s;
}

SParts s_parts(const FunceqSolution &sol, int order, const WPoly &w)
{
    const WPoly one(1);
    const QTSeries a1 = QTSeries::from_qseries(sol.a1);
    const QTSeries b1 = QTSeries::from_qseries(sol.b1);
    const QTSeries c1 = QTSeries::from_qseries(sol.c1);
    const QTSeries a_qt = subst_qt(sol.a_t);
    const QTSeries unit = QTSeries::monomial(0, 0, one, order);

    // Shared pieces of the eta/theta/kappa formulas.
    const QTSeries a1_over_4 = apply_factor(a1, 5, 3, w, 2, 4);
    const QTSeries aqt_over_4 = apply_factor(a_qt, 4, 2, w, 2, 4);
    const QTSeries b1_over_3 = apply_factor(b1, 5, 3, w, 2, 3);

    SParts p;
    auto set = [&](SPart part, QTSeries v) { p.parts[static_cast<std::size_t>(part)] = std::move(v); };
    set(SPart::alpha, apply_factor(unit, 1, 1, one, 0, 1) + apply_factor(unit, 5, 3, w, 2, 3));
    set(SPart::beta, apply_factor(a1, 1, 1, one, 0, 2));
    set(SPart::gamma, apply_factor(b1, 1, 1, one, 0, 1));
    set(SPart::delta, apply_factor(a1, 5, 3, w, 3, 3));
    set(SPart::epsilon, a1_over_4 - aqt_over_4);
    set(SPart::theta, b1_over_3 - a1_over_4 + aqt_over_4);
    set(SPart::iota, apply_factor(c1, 4, 1, w, 3, 1));
    set(SPart::kappa, apply_factor(c1, 3, 1, w, 2, 2) - b1_over_3 + a1_over_4 - aqt_over_4);
    // Mirror blocks share their partners' formulas.
    set(SPart::zeta, p[SPart::delta]);
    set(SPart::eta, p[SPart::epsilon]);
    set(SPart::lambda, p[SPart::iota]);
    set(SPart::mu, p[SPart::kappa]);
    return p;
}

QTSeries unrolled_sum(int which, int order, const WPoly &w)
{
    if (which < 1 || which > 4)
        throw std::invalid_argument("unrolled_sum: which must be 1..4");
    const bool low = which <= 2;
    QTSeries total(order);
    for (int i = 1;; ++i)
    {
        const int qexp = low ? i * i + 2 * i - 2 : i * i + 4 * i;
        if (qexp > order)
            break;
        const int texp = low ? 2 * i - 1 : 2 * i + 1;
        const int wexp = low ? i - 1 : i;
        const int pow_q = low ? 2 * i - 2 : 2 * i;
        const Integer sign = power_of_minus_three(which == 4 ? i : i - 1);
        QTSeries term = QTSeries::monomial(qexp, texp, w.pow(static_cast<unsigned>(wexp)) * Rational(sign), order);
        for (int p = 0; p < pow_q; ++p)
            term.div_one_minus(1, 0);
        for (int k = 1; k < i; ++k)
            for (int p = 0; p < 4; ++p)
                term.div_one_minus(k, 1);
        const int last_pow = which == 1 ? 1 : which == 2 ? 2 : which == 3 ? 3 : 4;
        for (int p = 0; p < last_pow; ++p)
            term.div_one_minus(i, 1);
        total += term;
    }
    return total;
}

UnrolledReport unrolled_check(const FunceqSolution &sol, int order, const WPoly &w)
{
    UnrolledReport rep;
#pragma omp parallel for schedule(dynamic, 1)
    for (int s = 0; s < 4; ++s)
        rep.sums[s] = unrolled_sum(s + 1, order, w);

    const TJet jets(sol.a1, sol.b1, sol.c1);
    const Brackets br = brackets(jets, order, w);
    rep.rebuilt = rep.sums[0] * br.x;
    rep.rebuilt += rep.sums[1] * br.y;
    rep.rebuilt += rep.sums[2] * br.z;
    rep.rebuilt -= rep.sums[3] * sol.a1;

    rep.equal = rep.rebuilt == sol.a_t;
    if (!rep.equal)
        for (int n = 0; n <= order && !rep.first_mismatch; ++n)
            for (int m = 0; m <= n; ++m)
                if (!(rep.rebuilt.coeff(n, m) == sol.a_t.coeff(n, m)))
                {
                    rep.first_mismatch = std::make_pair(n, m);
                    break;
                }
    return rep;
}

} // namespace sdpoly::funceq
