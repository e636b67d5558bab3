#include <sdpoly/error.hpp>
#include <sdpoly/qseries.hpp>

#include <sstream>
#include <stdexcept>

namespace sdpoly
{

namespace
{

void require_compatible(const QSeries &a, const QSeries &b, const char *op)
{
    if (a.order() != b.order() || a.wcap() != b.wcap())
    {
        std::ostringstream os;
        os << op << ": operands differ in truncation (order " << a.order() << "/wcap " << a.wcap() << " vs order "
           << b.order() << "/wcap " << b.wcap() << ')';
        throw OrderMismatch(os.str());
    }
}

} // namespace

QSeries::QSeries(int order, int wcap) : order_(order), wcap_(wcap)
{
    if (order < 0)
        throw std::invalid_argument("QSeries: negative order");
    if (wcap < 0)
        throw std::invalid_argument("QSeries: negative w-cap");
    coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

QSeries QSeries::monomial(int degree, const WPoly &c, int order)
{
    return monomial(degree, c, order, default_wcap(order));
}

QSeries QSeries::monomial(int degree, const WPoly &c, int order, int wcap)
{
    QSeries s(order, wcap);
    s.set(degree, c);
    return s;
}

QSeries QSeries::polynomial(std::initializer_list<long> coeffs, int order)
{
    QSeries s(order);
    int n = 0;
    for (long c : coeffs)
        s.set(n++, WPoly(c));
    return s;
}

void QSeries::set(int n, const WPoly &c)
{
    if (n < 0)
        throw std::invalid_argument("QSeries::set: negative degree");
    if (n > order_)
        return;
    coeffs_[n] = c.degree() > wcap_ ? c.truncated(wcap_) : c;
}

int QSeries::valuation() const
{
    for (int n = 0; n <= order_; ++n)
        if (!coeffs_[n].is_zero())
            return n;
    return -1;
}

QSeries &QSeries::operator+=(const QSeries &o)
{
    require_compatible(*this, o, "add");
    for (int n = 0; n <= order_; ++n)
        coeffs_[n] += o.coeffs_[n];
    return *this;
}

QSeries &QSeries::operator-=(const QSeries &o)
{
    require_compatible(*this, o, "sub");
    for (int n = 0; n <= order_; ++n)
        coeffs_[n] -= o.coeffs_[n];
    return *this;
}

QSeries &QSeries::operator*=(const Rational &c)
{
    for (auto &x : coeffs_)
        x *= c;
    return *this;
}

QSeries &QSeries::scale(const WPoly &c)
{
    if (c.is_constant())
        return *this *= c.coeff(0);
    for (auto &x : coeffs_)
        x = WPoly::mul_truncated(x, c, wcap_);
    return *this;
}

QSeries QSeries::operator-() const
{
    QSeries r = *this;
    for (auto &x : r.coeffs_)
        x = -x;
    return r;
}

QSeries &QSeries::shift(int d)
{
    if (d < 0)
        throw std::invalid_argument("QSeries::shift: negative shift");
    if (d == 0)
        return *this;
    for (int n = order_; n >= 0; --n)
        coeffs_[n] = n >= d ? std::move(coeffs_[n - d]) : WPoly();
    return *this;
}

QSeries &QSeries::div_one_minus_qk(int k)
{
    if (k < 1)
        throw std::invalid_argument("div_one_minus_qk: k must be >= 1");
    for (int n = k; n <= order_; ++n)
        if (!coeffs_[n - k].is_zero())
            coeffs_[n] += coeffs_[n - k];
    return *this;
}

QSeries &QSeries::mul_one_minus_qk(int k)
{
    if (k < 1)
        throw std::invalid_argument("mul_one_minus_qk: k must be >= 1");
    for (int n = order_; n >= k; --n)
        if (!coeffs_[n - k].is_zero())
            coeffs_[n] -= coeffs_[n - k];
    return *this;
}

QSeries QSeries::eval_w(const Rational &w) const
{
    QSeries r(order_, wcap_);
    for (int n = 0; n <= order_; ++n)
        r.coeffs_[n] = WPoly(coeffs_[n].eval(w));
    return r;
}

QSeries QSeries::truncated(int order, int wcap) const
{
    QSeries r(order, wcap);
    for (int n = 0; n <= order && n <= order_; ++n)
        r.set(n, coeffs_[n]);
    return r;
}

std::string QSeries::to_string() const
{
    std::ostringstream os;
    bool any = false;
    for (int n = 0; n <= order_; ++n)
    {
        if (coeffs_[n].is_zero())
            continue;
        if (any)
            os << " + ";
        any = true;
        os << '(' << coeffs_[n].to_string() << ")*q^" << n;
    }
    if (!any)
        os << '0';
    os << " + O(q^" << order_ + 1 << ')';
    return os.str();
}

QSeries operator+(QSeries a, const QSeries &b) { return a += b; }
QSeries operator-(QSeries a, const QSeries &b) { return a -= b; }

namespace
{

template <typename Kernel>
QSeries mul_with(const QSeries &a, const QSeries &b, Kernel kernel)
{
    require_compatible(a, b, "mul");
    QSeries r(a.order(), a.wcap());
    auto c = kernel(a.coeffs(), b.coeffs(), static_cast<std::size_t>(a.order()) + 1, a.wcap());
    for (int n = 0; n <= a.order(); ++n)
        r.set(n, c[n]);
    return r;
}

} // namespace

QSeries mul(const QSeries &a, const QSeries &b) { return mul_with(a, b, kernel::cauchy_parallel); }
QSeries operator*(const QSeries &a, const QSeries &b) { return mul(a, b); }
QSeries mul_serial(const QSeries &a, const QSeries &b) { return mul_with(a, b, kernel::cauchy_serial); }

QSeries inv(const QSeries &a)
{
    const WPoly &c0 = a[0];
    if (c0.is_zero() || !c0.is_constant())
        throw NotAUnit("inv: constant term must be a nonzero rational, got " + c0.to_string());
    const Rational inv0 = 1 / c0.coeff(0);
    const int N = a.order();
    QSeries r(N, a.wcap());
    r.set(0, WPoly(inv0));
    // r[n] = -inv0 * sum_{i=1..n} a[i] r[n-i]
    DenseAccumulator acc(a.wcap());
    for (int n = 1; n <= N; ++n)
    {
        for (int i = 1; i <= n; ++i)
            if (!a[i].is_zero() && !r[n - i].is_zero())
                acc.add_product(a[i], r[n - i]);
        WPoly s = acc.take();
        s *= -inv0;
        r.set(n, s);
    }
    return r;
}

QSeries div(const QSeries &a, const QSeries &b) { return mul(a, inv(b)); }

QSeries geom(int k, int order)
{
    if (k < 1)
        throw std::invalid_argument("geom: k must be >= 1");
    QSeries s = QSeries::one(order);
    s.div_one_minus_qk(k);
    return s;
}

QSeries one_minus_q_pow_neg(int e, int order)
{
    if (e < 0)
        throw std::invalid_argument("one_minus_q_pow_neg: negative exponent");
    QSeries s = QSeries::one(order);
    for (int i = 0; i < e; ++i)
        s.div_one_minus_qk(1);
    return s;
}

} // namespace sdpoly
