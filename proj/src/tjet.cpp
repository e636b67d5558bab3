#include <sdpoly/error.hpp>
#include <sdpoly/tjet.hpp>

namespace sdpoly
{

TJet::TJet(QSeries a0, QSeries a1, QSeries a2) : f0(std::move(a0)), f1(std::move(a1)), f2(std::move(a2))
{
    if (f0.order() != f1.order() || f0.order() != f2.order() || f0.wcap() != f1.wcap() || f0.wcap() != f2.wcap())
        throw OrderMismatch("TJet: components differ in truncation");
}

TJet TJet::constant(const QSeries &c)
{
    return TJet(c, QSeries(c.order(), c.wcap()), QSeries(c.order(), c.wcap()));
}

TJet &TJet::operator+=(const TJet &o)
{
    f0 += o.f0;
    f1 += o.f1;
    f2 += o.f2;
    return *this;
}

TJet &TJet::operator-=(const TJet &o)
{
    f0 -= o.f0;
    f1 -= o.f1;
    f2 -= o.f2;
    return *this;
}

TJet operator+(TJet a, const TJet &b) { return a += b; }
TJet operator-(TJet a, const TJet &b) { return a -= b; }

TJet jet_mul(const TJet &a, const TJet &b)
{
    QSeries c0 = mul(a.f0, b.f0);
    QSeries c1 = mul(a.f0, b.f1) + mul(a.f1, b.f0);
    QSeries c2 = mul(a.f0, b.f2) + mul(a.f1, b.f1) + mul(a.f2, b.f0);
    return TJet(std::move(c0), std::move(c1), std::move(c2));
}

namespace
{

// (1+u)^e = 1 + e u + e(e-1)/2 u^2 + ..., for integer e (possibly -1).
TJet binomial_jet(const QTSeries &a, int shift)
{
    const int N = a.order();
    QSeries f0(N, a.wcap()), f1(N, a.wcap()), f2(N, a.wcap());
    for (int n = 0; n <= N; ++n)
    {
        WPoly s0, s1, s2;
        for (int m = 0; m <= n; ++m)
        {
            const WPoly &c = a.coeff(n, m);
            if (c.is_zero())
                continue;
            const long e = m - shift;
            s0 += c;
            if (e != 0)
                s1 += c * Rational(e);
            if (e != 0 && e != 1)
                s2 += c * Rational(e * (e - 1) / 2);
        }
        f0.set(n, s0);
        f1.set(n, s1);
        f2.set(n, s2);
    }
    return TJet(std::move(f0), std::move(f1), std::move(f2));
}

} // namespace

TJet jet_of(const QTSeries &a) { return binomial_jet(a, 0); }
TJet jet_at_1(const QTSeries &a) { return binomial_jet(a, 1); }

} // namespace sdpoly
