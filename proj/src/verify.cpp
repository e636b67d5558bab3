#include <sdpoly/error.hpp>
#include <sdpoly/funceq.hpp>
#include <sdpoly/oracle.hpp>
#include <sdpoly/tjet.hpp>
#include <sdpoly/verify.hpp>

#include <algorithm>
#include <stdexcept>

namespace sdpoly::verify
{

namespace
{

std::optional<Mismatch> compare_poly(const WPoly &e, const WPoly &g, int n, bool symbolic)
{
    if (e == g)
        return std::nullopt;
    Mismatch m;
    m.n = n;
    if (!symbolic)
    {
        m.expected = e.coeff(0).get_str();
        m.got = g.coeff(0).get_str();
        return m;
    }
    const int top = std::max(e.degree(), g.degree());
    for (int k = 0; k <= top; ++k)
        if (e.coeff(k) != g.coeff(k))
        {
            m.k = k;
            m.expected = e.coeff(k).get_str();
            m.got = g.coeff(k).get_str();
            return m;
        }
    throw InternalError("compare_poly: unequal polynomials with equal coefficients");
}

bool is_symbolic(const QSeries &a)
{
    for (const auto &c : a.coeffs())
        if (!c.is_constant())
            return true;
    return false;
}

bool is_symbolic(const QTSeries &a)
{
    for (int n = 0; n <= a.order(); ++n)
        for (int m = 0; m <= n; ++m)
            if (!a.coeff(n, m).is_constant())
                return true;
    return false;
}

Check compare(std::string name, const QSeries &expected, const QSeries &got)
{
    Check c(std::move(name));
    c.mismatch = first_mismatch(expected, got);
    c.pass = !c.mismatch;
    return c;
}

Check compare(std::string name, const QTSeries &expected, const QTSeries &got)
{
    Check c(std::move(name));
    c.mismatch = first_mismatch(expected, got);
    c.pass = !c.mismatch;
    return c;
}

std::string total(const WPoly &c, const WPoly &w)
{
    // Symbolic rows are summed over k (w = 1); fixed rows are already numbers.
    return (w.is_constant() ? c.coeff(0) : c.eval(1)).get_str();
}

// Per-area lines in the style "oracle n=5: 63 = closed-form 63".
void add_total_lines(Check &c, const QSeries &oracle, const QSeries &engine, const std::string &engine_name, const WPoly &w)
{
    for (int n = 1; n <= oracle.order(); ++n)
    {
        const std::string o = total(oracle[n], w), e = total(engine[n], w);
        c.lines.push_back("oracle n=" + std::to_string(n) + ": " + o + (o == e ? " = " : " != ") + engine_name + " " + e);
    }
}

QSeries rational_series(int order)
{
    // q (1-q)^3 / (1 - 5q + 7q^2 - 4q^3)
    QSeries num = QSeries::polynomial({0, 1, -3, 3, -1}, order);
    return div(num, QSeries::polynomial({1, -5, 7, -4}, order));
}

} // namespace

std::string describe(const Mismatch &m)
{
    std::string s = "n=" + std::to_string(m.n);
    if (m.k)
        s += " k=" + std::to_string(*m.k);
    if (m.h)
        s += " h=" + std::to_string(*m.h);
    return s + " expected " + m.expected + " got " + m.got;
}

std::optional<Mismatch> first_mismatch(const QSeries &expected, const QSeries &got)
{
    if (expected.order() != got.order())
        throw OrderMismatch("first_mismatch: orders differ");
    const bool symbolic = is_symbolic(expected) || is_symbolic(got);
    for (int n = 0; n <= expected.order(); ++n)
        if (auto m = compare_poly(expected[n], got[n], n, symbolic))
            return m;
    return std::nullopt;
}

std::optional<Mismatch> first_mismatch(const QTSeries &expected, const QTSeries &got)
{
    if (expected.order() != got.order())
        throw OrderMismatch("first_mismatch: orders differ");
    const bool symbolic = is_symbolic(expected) || is_symbolic(got);
    for (int n = 0; n <= expected.order(); ++n)
        for (int h = 0; h <= n; ++h)
            if (auto m = compare_poly(expected.coeff(n, h), got.coeff(n, h), n, symbolic))
            {
                m->h = h;
                return m;
            }
    return std::nullopt;
}

std::optional<Mismatch> sparsity_violation(const QSeries &s)
{
    for (int n = 0; n <= s.order(); ++n)
        for (const auto &[k, v] : s[n].terms())
            if (n < 5 * k - 3)
                return Mismatch{n, k, std::nullopt, "0", v.get_str()};
    return std::nullopt;
}

bool Report::all_pass() const
{
    return std::ranges::all_of(checks, [](const Check &c) { return c.pass; });
}

const Check *Report::first_failure() const
{
    const Check *best = nullptr;
    for (const auto &c : checks)
    {
        if (c.pass)
            continue;
        if (!best || (c.mismatch && (!best->mismatch || c.mismatch->n < best->mismatch->n)))
            best = &c;
    }
    return best;
}

Report run(const Options &opts)
{
    const int N = opts.order;
    if (N < 1)
        throw std::invalid_argument("verify: order must be >= 1");
    if (opts.oracle_max > oracle::ceiling())
        throw ResourceError("verify: oracle n_max " + std::to_string(opts.oracle_max) + " exceeds the ceiling " +
                            std::to_string(oracle::ceiling()));
    const WPoly &w = opts.w;
    const bool symbolic = !w.is_constant();

    auto closed = [&](int order) {
        if (opts.num || opts.den)
            return closed_form::assemble_from(opts.num ? std::span<const closed_form::Term>(*opts.num) : closed_form::num_terms(),
                                              opts.den ? std::span<const closed_form::Term>(*opts.den) : closed_form::den_terms(),
                                              order, w);
        return closed_form::assemble(order, w);
    };

    Report report;
    const auto cf = closed(N);
    const auto fe = funceq::fixed_point_solve(N, w);
    const auto jets = closed_form::solve_jets(N, w);

    report.checks.push_back(compare("closed-form G = funceq G", cf.g, fe.g));
    report.checks.push_back(compare("closed-form A1 = funceq A1", jets.a1, fe.a1));
    report.checks.push_back(compare("closed-form B1 = funceq B1", jets.b1, fe.b1));
    report.checks.push_back(compare("closed-form C1 = funceq C1", jets.c1, fe.c1));
    report.checks.push_back(compare("closed-form G = G from solved jets", cf.g, jets.g));

    report.checks.push_back(compare("S parts sum to A(t)", fe.a_t, funceq::s_parts(fe, N, w).sum()));
    {
        const auto unrolled = funceq::unrolled_check(fe, N, w);
        Check c = compare("unrolled A(t) = A(t)", fe.a_t, unrolled.rebuilt);
        if (c.pass != unrolled.equal)
            throw InternalError("verify: unrolled_check disagrees with direct comparison");
        report.checks.push_back(std::move(c));
    }

    if (w == WPoly(0))
        report.checks.push_back(compare("closed-form at w=0 = rational expansion", rational_series(N), cf.g));

    const int M = opts.oracle_max;
    if (M > 0)
    {
        const auto table = oracle::enumerate(M);
        const auto cf_m = closed(M);
        const auto fe_m = funceq::fixed_point_solve(M, w);
        const auto jets_m = closed_form::solve_jets(M, w);

        const QSeries sd = oracle::refined_series(table, oracle::Label::simplex_duplex, M, w);
        {
            Check c = compare("oracle simplex-duplex = closed-form G", sd, cf_m.g);
            add_total_lines(c, sd, cf_m.g, "closed-form", w);
            report.checks.push_back(std::move(c));
        }
        {
            Check c = compare("oracle simplex-duplex = funceq G", sd, fe_m.g);
            add_total_lines(c, sd, fe_m.g, "funceq", w);
            report.checks.push_back(std::move(c));
        }

        const QSeries cc = oracle::refined_series(table, oracle::Label::column_convex, M, w);
        {
            Check c = compare("oracle column-convex = closed-form column-convex", cc, closed_form::column_convex_g(M));
            add_total_lines(c, cc, closed_form::column_convex_g(M), "closed-form", w);
            report.checks.push_back(std::move(c));
        }
        // Column-convex is the w^0 slice of G.
        if (symbolic)
            report.checks.push_back(compare("oracle column-convex = funceq G at w=0", cc, fe_m.g.eval_w(0)));

        const QTSeries s_qt = oracle::refined_series_qt(table, oracle::Label::s, M, w);
        const TJet oj = jet_at_1(s_qt);
        report.checks.push_back(compare("oracle A1 = closed-form A1", oj.f0, jets_m.a1));
        report.checks.push_back(compare("oracle B1 = closed-form B1", oj.f1, jets_m.b1));
        report.checks.push_back(compare("oracle C1 = closed-form C1", oj.f2, jets_m.c1));
        report.checks.push_back(compare("oracle A1 = funceq A1", oj.f0, fe_m.a1));
        report.checks.push_back(compare("oracle B1 = funceq B1", oj.f1, fe_m.b1));
        report.checks.push_back(compare("oracle C1 = funceq C1", oj.f2, fe_m.c1));
        report.checks.push_back(compare("oracle A(t) = funceq A(t)", s_qt, fe_m.a_t));

        {
            // Ending with a duplex column: q^2 w / (1-q)^2 * C1.
            QSeries ends = fe_m.c1;
            ends.div_one_minus_qk(1).div_one_minus_qk(1).shift(2);
            ends.scale(w);
            report.checks.push_back(
                compare("oracle ends-duplex = q^2 w C1/(1-q)^2", oracle::refined_series(table, oracle::Label::ends_duplex, M, w), ends));
        }

        {
            Check c("oracle blocks partition S");
            QTSeries sum(M);
            for (SPart p : kAllParts)
                sum += oracle::refined_series_qt(table, oracle::part_label(p), M, w);
            c.mismatch = first_mismatch(s_qt, sum);
            c.pass = !c.mismatch && table.unclassified() == 0 && table.multiply_classified() == 0;
            c.lines.push_back("unclassified " + std::to_string(table.unclassified()) + ", multiply classified " +
                              std::to_string(table.multiply_classified()));
            report.checks.push_back(std::move(c));
        }
        {
            const auto parts = funceq::s_parts(fe_m, M, w);
            for (SPart p : kAllParts)
                report.checks.push_back(compare("oracle S-" + std::string(part_name(p)) + " = funceq part",
                                                oracle::refined_series_qt(table, oracle::part_label(p), M, w), parts[p]));
        }
        for (auto [a, b] : kMirrorPairs)
            report.checks.push_back(compare("mirror S-" + std::string(part_name(a)) + " = S-" + std::string(part_name(b)),
                                            oracle::refined_series_qt(table, oracle::part_label(a), M, w),
                                            oracle::refined_series_qt(table, oracle::part_label(b), M, w)));
        // The bound fails from n = 15 on (k = 4), so it is checked only on
        // the range the oracle covers.
        if (symbolic)
            for (auto [name, series] : {std::pair{"oracle", &sd}, std::pair{"closed-form", &cf_m.g}, std::pair{"funceq", &fe_m.g}})
            {
                Check c(std::string("sparsity n >= 5k-3 up to n=") + std::to_string(M) + " (" + name + ")");
                c.mismatch = sparsity_violation(*series);
                c.pass = !c.mismatch;
                report.checks.push_back(std::move(c));
            }
    }
    return report;
}

} // namespace sdpoly::verify
