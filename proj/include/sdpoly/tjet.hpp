#pragma once

#include <sdpoly/qseries.hpp>
#include <sdpoly/qtseries.hpp>

namespace sdpoly
{

// Second-order jet of a series-valued function of t at t = 1:
// f(1 + u) = f0 + f1*u + f2*u^2 (mod u^3).
struct TJet
{
    QSeries f0;
    QSeries f1;
    QSeries f2;

    TJet() = default;
    TJet(QSeries a0, QSeries a1, QSeries a2);

    // Jet of a t-independent value.
    static TJet constant(const QSeries &c);

    int order() const noexcept { return f0.order(); }

    TJet &operator+=(const TJet &o);
    TJet &operator-=(const TJet &o);
    friend bool operator==(const TJet &a, const TJet &b) = default;
};

TJet operator+(TJet a, const TJet &b);
TJet operator-(TJet a, const TJet &b);
// Product mod u^3.
TJet jet_mul(const TJet &a, const TJet &b);

// Jet of f(t) = a(t) itself: (sum a_m, sum m a_m, sum C(m,2) a_m).
TJet jet_of(const QTSeries &a);

// Jet of f(t) = a(t)/t. Applied to A(t) this yields (A1, B1, C1):
// f0 = sum a_m, f1 = sum (m-1) a_m, f2 = sum (m-1)(m-2)/2 a_m.
TJet jet_at_1(const QTSeries &a);

} // namespace sdpoly
