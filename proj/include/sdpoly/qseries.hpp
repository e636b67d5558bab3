#pragma once

#include <sdpoly/wpoly.hpp>

#include <span>
#include <string>
#include <vector>

namespace sdpoly
{

// Default bound on the w-degree carried by a series of order N. A duplex
// column holds at least two cells, so no count at area <= N needs more.
constexpr int default_wcap(int order) noexcept { return order <= 0 ? 0 : (order + 1) / 2; }

// Truncated power series in q over Q[w].
//
// A series of order N knows the coefficients of q^0 .. q^N exactly. Every
// coefficient is a WPoly of degree <= wcap; terms of higher w-degree are
// dropped, which is the quotient map Q[w] -> Q[w]/(w^(wcap+1)) and commutes
// with all ring operations.
class QSeries
{
public:
    QSeries() : QSeries(0) {}
    explicit QSeries(int order) : QSeries(order, default_wcap(order)) {}
    QSeries(int order, int wcap);

    static QSeries constant(const WPoly &c, int order) { return monomial(0, c, order); }
    static QSeries constant(const WPoly &c, int order, int wcap) { return monomial(0, c, order, wcap); }
    static QSeries one(int order) { return constant(WPoly(1), order); }
    // c * q^degree; vanishes if degree > order.
    static QSeries monomial(int degree, const WPoly &c, int order);
    static QSeries monomial(int degree, const WPoly &c, int order, int wcap);
    // Polynomial in q with rational coefficients, low degree first.
    static QSeries polynomial(std::initializer_list<long> coeffs, int order);

    int order() const noexcept { return order_; }
    int wcap() const noexcept { return wcap_; }
    const WPoly &operator[](int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
    std::span<const WPoly> coeffs() const noexcept { return coeffs_; }

    // Stores c at q^n (w-truncated). Degrees beyond the order are ignored.
    void set(int n, const WPoly &c);
    // Lowest q-degree with a nonzero coefficient, or -1.
    int valuation() const;
    bool is_zero() const { return valuation() < 0; }

    QSeries &operator+=(const QSeries &o);
    QSeries &operator-=(const QSeries &o);
    QSeries &operator*=(const Rational &c);
    // Multiplies by a t-free w-polynomial.
    QSeries &scale(const WPoly &c);
    QSeries operator-() const;

    // In place: multiply by q^d (d >= 0).
    QSeries &shift(int d);
    // In place: multiply by 1/(1 - q^k), k >= 1.
    QSeries &div_one_minus_qk(int k);
    // In place: multiply by (1 - q^k), k >= 1.
    QSeries &mul_one_minus_qk(int k);

    // Substitutes a rational for w.
    QSeries eval_w(const Rational &w) const;
    // The series with coefficients beyond `order` and w-degrees beyond `wcap` dropped.
    QSeries truncated(int order, int wcap) const;
    QSeries truncated(int order) const { return truncated(order, std::min(wcap_, default_wcap(order))); }

    friend bool operator==(const QSeries &a, const QSeries &b)
    {
        return a.order_ == b.order_ && a.wcap_ == b.wcap_ && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const;

private:
    int order_;
    int wcap_;
    std::vector<WPoly> coeffs_;
};

QSeries operator+(QSeries a, const QSeries &b);
QSeries operator-(QSeries a, const QSeries &b);

// Truncated Cauchy product. Uses the OpenMP kernel.
QSeries mul(const QSeries &a, const QSeries &b);
QSeries operator*(const QSeries &a, const QSeries &b);
// Same result as mul(), computed by the single-threaded reference kernel.
QSeries mul_serial(const QSeries &a, const QSeries &b);

// Multiplicative inverse. Throws NotAUnit unless the constant term is a nonzero rational.
QSeries inv(const QSeries &a);
// a / b == a * inv(b).
QSeries div(const QSeries &a, const QSeries &b);

// 1/(1 - q^k) to order N. Throws std::invalid_argument for k < 1.
QSeries geom(int k, int order);
// (1 - q)^(-e) to order N, e >= 0.
QSeries one_minus_q_pow_neg(int e, int order);

namespace kernel
{

// out[n] = sum_{i+j=n} a[i]*b[j] for n < out_len, w-degrees above cap dropped.
// The parallel variant splits the output range across OpenMP threads; both
// produce identical results.
std::vector<WPoly> cauchy_serial(std::span<const WPoly> a, std::span<const WPoly> b, std::size_t out_len, int wcap);
std::vector<WPoly> cauchy_parallel(std::span<const WPoly> a, std::span<const WPoly> b, std::size_t out_len, int wcap);

} // namespace kernel

} // namespace sdpoly
