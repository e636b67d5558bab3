#include <sdpoly/error.hpp>
#include <sdpoly/qtseries.hpp>

#include <sstream>
#include <stdexcept>

namespace sdpoly
{

namespace
{

const WPoly kZero;

void require_compatible(const QTSeries &a, const QTSeries &b, const char *op)
{
    if (a.order() != b.order() || a.wcap() != b.wcap())
        throw OrderMismatch(std::string(op) + ": bivariate operands differ in truncation");
}

void require_triangular_step(int qdeg, int tdeg, const char *op)
{
    if (tdeg < 0 || qdeg < tdeg)
        throw std::invalid_argument(std::string(op) + ": need 0 <= tdeg <= qdeg");
}

} // namespace

QTSeries::QTSeries(int order, int wcap) : order_(order), wcap_(wcap)
{
    if (order < 0)
        throw std::invalid_argument("QTSeries: negative order");
    if (wcap < 0)
        throw std::invalid_argument("QTSeries: negative w-cap");
    rows_.resize(static_cast<std::size_t>(order) + 1);
    for (int m = 0; m <= order; ++m)
        rows_[m].resize(static_cast<std::size_t>(order - m) + 1);
}

QTSeries QTSeries::monomial(int qdeg, int tdeg, const WPoly &c, int order)
{
    return monomial(qdeg, tdeg, c, order, default_wcap(order));
}

QTSeries QTSeries::monomial(int qdeg, int tdeg, const WPoly &c, int order, int wcap)
{
    QTSeries s(order, wcap);
    s.set(qdeg, tdeg, c);
    return s;
}

QTSeries QTSeries::from_qseries(const QSeries &s)
{
    QTSeries r(s.order(), s.wcap());
    for (int n = 0; n <= s.order(); ++n)
        r.rows_[0][n] = s[n];
    return r;
}

const WPoly &QTSeries::coeff(int n, int m) const
{
    if (m < 0 || m > n || n > order_)
        return kZero;
    return rows_[m][n - m];
}

void QTSeries::set(int n, int m, const WPoly &c)
{
    if (m < 0 || n < 0)
        throw std::invalid_argument("QTSeries::set: negative degree");
    if (m > n)
    {
        if (c.is_zero())
            return;
        throw std::invalid_argument("QTSeries::set: t-degree exceeds q-degree");
    }
    if (n > order_)
        return;
    rows_[m][n - m] = c.degree() > wcap_ ? c.truncated(wcap_) : c;
}

QSeries QTSeries::row(int m) const
{
    QSeries s(order_, wcap_);
    if (m < 0 || m > order_)
        return s;
    for (int n = m; n <= order_; ++n)
        s.set(n, rows_[m][n - m]);
    return s;
}

QTSeries &QTSeries::operator+=(const QTSeries &o)
{
    require_compatible(*this, o, "add");
    for (std::size_t m = 0; m < rows_.size(); ++m)
        for (std::size_t j = 0; j < rows_[m].size(); ++j)
            rows_[m][j] += o.rows_[m][j];
    return *this;
}

QTSeries &QTSeries::operator-=(const QTSeries &o)
{
    require_compatible(*this, o, "sub");
    for (std::size_t m = 0; m < rows_.size(); ++m)
        for (std::size_t j = 0; j < rows_[m].size(); ++j)
            rows_[m][j] -= o.rows_[m][j];
    return *this;
}

QTSeries &QTSeries::operator*=(const Rational &c)
{
    for (auto &row : rows_)
        for (auto &x : row)
            x *= c;
    return *this;
}

QTSeries QTSeries::operator-() const
{
    QTSeries r = *this;
    r *= -1;
    return r;
}

QTSeries &QTSeries::mul_q(const QSeries &s)
{
    if (s.order() != order_ || s.wcap() != wcap_)
        throw OrderMismatch("mul_q: series differ in truncation");
    for (auto &row : rows_)
        row = kernel::cauchy_parallel(row, s.coeffs(), row.size(), wcap_);
    return *this;
}

QTSeries &QTSeries::mul_monomial(int qdeg, int tdeg, const WPoly &c)
{
    require_triangular_step(qdeg, tdeg, "mul_monomial");
    QTSeries r(order_, wcap_);
    for (int m = 0; m + tdeg <= order_; ++m)
        for (int n = m; n + qdeg <= order_; ++n)
        {
            const WPoly &x = rows_[m][n - m];
            if (!x.is_zero())
                r.set(n + qdeg, m + tdeg, WPoly::mul_truncated(x, c, wcap_));
        }
    return *this = std::move(r);
}

QTSeries &QTSeries::div_one_minus(int qdeg, int tdeg)
{
    require_triangular_step(qdeg, tdeg, "div_one_minus");
    if (qdeg < 1)
        throw std::invalid_argument("div_one_minus: qdeg must be >= 1");
    // new(n, m) = old(n, m) + new(n - qdeg, m - tdeg), visiting sources first.
    for (int m = tdeg; m <= order_; ++m)
        for (int n = m; n <= order_; ++n)
        {
            const WPoly &src = coeff(n - qdeg, m - tdeg);
            if (!src.is_zero())
                rows_[m][n - m] += src;
        }
    return *this;
}

QTSeries &QTSeries::mul_one_minus(int qdeg, int tdeg)
{
    require_triangular_step(qdeg, tdeg, "mul_one_minus");
    if (qdeg < 1)
        throw std::invalid_argument("mul_one_minus: qdeg must be >= 1");
    for (int m = order_; m >= tdeg; --m)
        for (int n = order_; n >= m; --n)
        {
            const WPoly &src = coeff(n - qdeg, m - tdeg);
            if (!src.is_zero())
                rows_[m][n - m] -= src;
        }
    return *this;
}

QTSeries QTSeries::eval_w(const Rational &w) const
{
    QTSeries r(order_, wcap_);
    for (std::size_t m = 0; m < rows_.size(); ++m)
        for (std::size_t j = 0; j < rows_[m].size(); ++j)
            r.rows_[m][j] = WPoly(rows_[m][j].eval(w));
    return r;
}

QTSeries QTSeries::truncated(int order) const
{
    QTSeries r(order, std::min(wcap_, default_wcap(order)));
    for (int m = 0; m <= order && m <= order_; ++m)
        for (int n = m; n <= order && n <= order_; ++n)
            r.set(n, m, rows_[m][n - m]);
    return r;
}

std::string QTSeries::to_string() const
{
    std::ostringstream os;
    bool any = false;
    for (int n = 0; n <= order_; ++n)
        for (int m = 0; m <= n; ++m)
        {
            const WPoly &c = coeff(n, m);
            if (c.is_zero())
                continue;
            if (any)
                os << " + ";
            any = true;
            os << '(' << c.to_string() << ")*q^" << n << "*t^" << m;
        }
    if (!any)
        os << '0';
    return os.str();
}

QTSeries operator+(QTSeries a, const QTSeries &b) { return a += b; }
QTSeries operator-(QTSeries a, const QTSeries &b) { return a -= b; }
QTSeries operator*(QTSeries a, const QSeries &s) { return a.mul_q(s); }

QTSeries mul(const QTSeries &a, const QTSeries &b)
{
    require_compatible(a, b, "mul");
    const int N = a.order();
    QTSeries r(N, a.wcap());
    for (int m = 0; m <= N; ++m)
    {
        std::vector<WPoly> acc(static_cast<std::size_t>(N - m) + 1);
        // Row ma of a starts at q^ma, row m - ma of b at q^(m - ma): their
        // product is aligned with row m of the result.
        for (int ma = 0; ma <= m; ++ma)
        {
            auto part = kernel::cauchy_parallel(a.rows_[ma], b.rows_[m - ma], acc.size(), a.wcap());
            for (std::size_t j = 0; j < acc.size(); ++j)
                acc[j] += part[j];
        }
        r.rows_[m] = std::move(acc);
    }
    return r;
}

QTSeries subst_qt(const QTSeries &a)
{
    QTSeries r(a.order(), a.wcap());
    for (int m = 0; m <= a.order(); ++m)
        for (int n = 2 * m; n <= a.order(); ++n)
            r.set(n, m, a.coeff(n - m, m));
    return r;
}

} // namespace sdpoly
