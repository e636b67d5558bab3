#pragma once

#include <sdpoly/qseries.hpp>

#include <string>
#include <vector>

namespace sdpoly
{

// Truncated series in q and t over Q[w] whose q^n t^m coefficient vanishes
// unless m <= n.
//
// Storage is triangular: row m holds the coefficients of q^m .. q^N for t^m,
// so the invariant holds by construction.
class QTSeries
{
public:
    QTSeries() : QTSeries(0) {}
    explicit QTSeries(int order) : QTSeries(order, default_wcap(order)) {}
    QTSeries(int order, int wcap);

    // c * q^qdeg * t^tdeg. Requires tdeg <= qdeg.
    static QTSeries monomial(int qdeg, int tdeg, const WPoly &c, int order);
    static QTSeries monomial(int qdeg, int tdeg, const WPoly &c, int order, int wcap);
    // The t-free series s embedded as the t^0 row.
    static QTSeries from_qseries(const QSeries &s);

    int order() const noexcept { return order_; }
    int wcap() const noexcept { return wcap_; }

    // Coefficient of q^n t^m; zero outside the stored triangle.
    const WPoly &coeff(int n, int m) const;
    // Throws std::invalid_argument when m > n and c != 0; ignores n > order.
    void set(int n, int m, const WPoly &c);
    // The t^m row as a q-series (zero below q^m).
    QSeries row(int m) const;

    QTSeries &operator+=(const QTSeries &o);
    QTSeries &operator-=(const QTSeries &o);
    QTSeries &operator*=(const Rational &c);
    QTSeries operator-() const;

    // Multiplies by a t-free series.
    QTSeries &mul_q(const QSeries &s);
    // Multiplies by c q^qdeg t^tdeg, tdeg <= qdeg.
    QTSeries &mul_monomial(int qdeg, int tdeg, const WPoly &c);
    // Multiplies by 1/(1 - q^qdeg t^tdeg), tdeg <= qdeg, qdeg >= 1.
    QTSeries &div_one_minus(int qdeg, int tdeg);
    // Multiplies by (1 - q^qdeg t^tdeg), tdeg <= qdeg, qdeg >= 1.
    QTSeries &mul_one_minus(int qdeg, int tdeg);

    QTSeries eval_w(const Rational &w) const;
    QTSeries truncated(int order) const;

    friend bool operator==(const QTSeries &a, const QTSeries &b)
    {
        return a.order_ == b.order_ && a.wcap_ == b.wcap_ && a.rows_ == b.rows_;
    }

    std::string to_string() const;

private:
    friend QTSeries mul(const QTSeries &a, const QTSeries &b);
    int order_;
    int wcap_;
    // rows_[m][j] is the coefficient of q^(m+j) t^m.
    std::vector<std::vector<WPoly>> rows_;
};

QTSeries operator+(QTSeries a, const QTSeries &b);
QTSeries operator-(QTSeries a, const QTSeries &b);
QTSeries operator*(QTSeries a, const QSeries &s);
QTSeries mul(const QTSeries &a, const QTSeries &b);

// A(t) -> A(qt): the q^n t^m coefficient of the result is the q^(n-m) t^m
// coefficient of a.
QTSeries subst_qt(const QTSeries &a);

} // namespace sdpoly
