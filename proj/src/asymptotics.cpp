#include <sdpoly/asymptotics.hpp>
#include <sdpoly/closed_form.hpp>
#include <sdpoly/error.hpp>

#include <cmath>
#include <stdexcept>

namespace sdpoly::asymptotics
{

unsigned long precision_bits(int digits) { return static_cast<unsigned long>(std::ceil(digits * 3.3219280948873623)) + 64; }

namespace
{

Integer pow10(int e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return r;
}

std::string format_scaled(const Integer &scaled, int places)
{
    // scaled = round(x * 10^places)
    const bool negative = scaled < 0;
    std::string digits = Integer(abs(scaled)).get_str();
    if (static_cast<int>(digits.size()) <= places)
        digits.insert(0, static_cast<std::size_t>(places + 1) - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
    return negative ? "-" + out : out;
}

Real to_real(const Rational &q, unsigned long bits)
{
    Real r(0, bits);
    r = q;
    return r;
}

Rational constant_coeff(const QSeries &s, int n)
{
    const WPoly &c = s[n];
    if (!c.is_constant())
        throw std::domain_error("asymptotics: series still depends on w at q^" + std::to_string(n));
    return c.coeff(0);
}

int stabilization(const std::vector<std::string> &rounded, int first)
{
    const int last = static_cast<int>(rounded.size()) - 1;
    int n = last;
    while (n - 1 >= first && rounded[n - 1] == rounded[last])
        --n;
    return n;
}

template <typename F>
Real bisect(F sign_at, Real lo, Real hi, int digits, unsigned long bits)
{
    const int slo = sign_at(lo);
    const int steps = static_cast<int>(std::ceil(digits * 3.3219280948873623)) + 8;
    for (int i = 0; i < steps; ++i)
    {
        Real mid(0, bits);
        mid = (lo + hi) / 2;
        const int s = sign_at(mid);
        if (s == 0)
            return mid;
        if (s == slo)
            lo = mid;
        else
            hi = mid;
    }
    Real mid(0, bits);
    mid = (lo + hi) / 2;
    return mid;
}

} // namespace

std::string round_decimal(const Rational &x, int places)
{
    // floor(x * 10^places + 1/2)
    Rational scaled = x * Rational(pow10(places)) + Rational(1, 2);
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return format_scaled(q, places);
}

std::string round_decimal(const Real &x, int places)
{
    Real scaled(0, x.get_prec());
    scaled = x * Real(pow10(places).get_str(), x.get_prec()) + 0.5;
    Real fl(0, x.get_prec());
    mpf_floor(fl.get_mpf_t(), scaled.get_mpf_t());
    return format_scaled(Integer(fl), places);
}

AsymptoticReport ratio_analysis(const QSeries &g, int digits)
{
    const int N = g.order();
    if (N < 3)
        throw std::invalid_argument("ratio_analysis: need order >= 3");
    if (digits < 16)
        throw std::invalid_argument("ratio_analysis: need at least 16 working digits");
    const unsigned long bits = precision_bits(digits);

    std::vector<Rational> a(static_cast<std::size_t>(N) + 1);
    for (int n = 1; n <= N; ++n)
    {
        a[n] = constant_coeff(g, n);
        if (a[n] <= 0)
            throw std::domain_error("ratio_analysis: coefficient of q^" + std::to_string(n) +
                                    " is not positive; ratio method inapplicable");
    }

    AsymptoticReport r;
    r.order = N;
    r.digits = digits;
    // Assignment keeps the target's precision, so set it first.
    r.growth_full.set_prec(bits);
    r.amplitude_full.set_prec(bits);

    // Rounded ratios are computed exactly, so they do not depend on precision.
    std::vector<std::string> ratio_rounded(static_cast<std::size_t>(N) + 1);
    for (int n = 2; n <= N; ++n)
        ratio_rounded[n] = round_decimal(Rational(a[n] / a[n - 1]), 12);
    r.growth = ratio_rounded[N];
    r.growth_stabilization = stabilization(ratio_rounded, 2);
    r.growth_full = to_real(Rational(a[N] / a[N - 1]), bits);

    {
        const Rational r2 = a[N] / a[N - 1], r1 = a[N - 1] / a[N - 2], r0 = a[N - 2] / a[N - 3 > 0 ? N - 3 : 1];
        const Rational d1 = r2 - r1, d0 = r1 - r0;
        r.growth_aitken = d1 == d0 ? r.growth : round_decimal(Rational(r2 - d1 * d1 / (d1 - d0)), 12);
    }

    std::vector<std::string> amp_rounded(static_cast<std::size_t>(N) + 1);
    Real power(1, bits);
    Real amp(0, bits);
    for (int n = 1; n <= N; ++n)
    {
        power *= r.growth_full;
        amp = to_real(a[n], bits) / power;
        amp_rounded[n] = round_decimal(amp, 12);
    }
    r.amplitude_full = amp;
    r.amplitude = amp_rounded[N];
    r.amplitude_stabilization = stabilization(amp_rounded, 1);
    r.conclusive = r.growth_stabilization < N && r.amplitude_stabilization < N;
    return r;
}

Real pole_from_polynomial(const std::vector<Rational> &coeffs, int digits)
{
    const unsigned long bits = precision_bits(digits);
    std::vector<Real> c;
    for (const auto &x : coeffs)
        c.push_back(to_real(x, bits));
    auto sign_at = [&](const Real &x) {
        Real acc(0, bits);
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * x + *it;
        return sgn(acc);
    };
    const int steps = 4096;
    Real prev(0, bits);
    int prev_sign = sign_at(prev);
    for (int k = 1; k < steps; ++k)
    {
        Real x(k, bits);
        x /= steps;
        const int s = sign_at(x);
        if (s == 0)
            return x;
        if (prev_sign != 0 && s != prev_sign)
            return bisect(sign_at, prev, x, digits, bits);
        prev = x;
        prev_sign = s;
    }
    throw Inconclusive("pole_from_polynomial: no sign change on (0, 1)");
}

std::optional<Real> tail_bound(const QSeries &den, const Real &x, int digits)
{
    const unsigned long bits = precision_bits(digits);
    const int N = den.order();
    const int first = std::max(1, N - 9);
    Real peak(0, bits);
    Real ratio(0, bits);
    bool have_ratio = false;
    for (int n = first; n <= N; ++n)
    {
        Real v(0, bits);
        v = abs(to_real(constant_coeff(den, n), bits));
        if (v > peak)
            peak = v;
        Real prev(0, bits);
        prev = abs(to_real(constant_coeff(den, n - 1), bits));
        if (prev != 0 && v != 0)
        {
            Real q(0, bits);
            q = v / prev;
            if (!have_ratio || q > ratio)
                ratio = q;
            have_ratio = true;
        }
    }
    if (!have_ratio || ratio < 1)
        ratio = 1;
    Real rx(0, bits);
    rx = ratio * x;
    if (rx >= 1)
        return std::nullopt;
    Real xn(1, bits);
    for (int n = 0; n < N; ++n)
        xn *= x;
    Real bound(0, bits);
    bound = peak * xn * rx / (1 - rx);
    return bound;
}

Real pole_from_series(const QSeries &den, int digits, double tail_tolerance)
{
    const unsigned long bits = precision_bits(digits);
    const int N = den.order();
    std::vector<Real> c;
    for (int n = 0; n <= N; ++n)
        c.push_back(to_real(constant_coeff(den, n), bits));
    auto value_at = [&](const Real &x) {
        Real acc(0, bits);
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    };
    // Sign is trusted only where |value| exceeds the tail bound.
    auto trusted_sign = [&](const Real &x) -> std::optional<int> {
        auto tail = tail_bound(den, x, digits);
        if (!tail || *tail >= tail_tolerance)
            return std::nullopt;
        Real v = value_at(x);
        if (abs(v) <= *tail)
            return 0;
        return sgn(v);
    };
    auto sign_at = [&](const Real &x) { return sgn(value_at(x)); };

    const int steps = 4096;
    Real prev(0, bits);
    auto prev_sign = trusted_sign(prev);
    for (int k = 1; k < steps; ++k)
    {
        Real x(k, bits);
        x /= steps;
        auto s = trusted_sign(x);
        if (!s)
            break;
        if (*s != 0 && prev_sign && *prev_sign != 0 && *s != *prev_sign)
            return bisect(sign_at, prev, x, digits, bits);
        if (*s != 0)
        {
            prev = x;
            prev_sign = s;
        }
    }
    throw Inconclusive("pole_from_series: no trusted sign change of the truncated series");
}

void attach_pole(AsymptoticReport &report, const Real &pole, double consistency_tolerance)
{
    report.pole_full = pole;
    report.pole = round_decimal(pole, 12);
    Real prod(0, pole.get_prec());
    prod = pole * report.growth_full - 1;
    report.reciprocal_error = std::fabs(prod.get_d());
    report.conclusive = report.conclusive && *report.reciprocal_error < consistency_tolerance;
}

AsymptoticReport analyze(const Rational &w, int order, int digits)
{
    const auto cf = closed_form::assemble(order, WPoly(w));
    AsymptoticReport report = ratio_analysis(cf.g, digits);
    try
    {
        const Real pole = w == 0 ? pole_from_polynomial({1, -5, 7, -4}, digits) : pole_from_series(cf.den, digits);
        attach_pole(report, pole);
    }
    catch (const Inconclusive &)
    {
        report.conclusive = false;
    }
    return report;
}

} // namespace sdpoly::asymptotics
