#include <sdpoly/wpoly.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sdpoly
{

WPoly::WPoly(const Rational &c)
{
    if (c != 0)
        terms_.emplace_back(0, c);
}

WPoly WPoly::monomial(int degree, const Rational &c)
{
    if (degree < 0)
        throw std::invalid_argument("WPoly::monomial: negative degree");
    WPoly p;
    if (c != 0)
        p.terms_.emplace_back(degree, c);
    return p;
}

Rational WPoly::coeff(int degree) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), degree,
                               [](const Term &t, int d) { return t.first < d; });
    if (it != terms_.end() && it->first == degree)
        return it->second;
    return 0;
}

Rational WPoly::eval(const Rational &w) const
{
    // Horner over the sparse terms, highest degree first.
    Rational acc = 0;
    int prev = degree();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    {
        for (int d = it->first; d < prev; ++d)
            acc *= w;
        acc += it->second;
        prev = it->first;
    }
    for (int d = 0; d < prev; ++d)
        acc *= w;
    return acc;
}

WPoly WPoly::truncated(int cap) const
{
    WPoly r;
    for (const auto &t : terms_)
    {
        if (t.first > cap)
            break;
        r.terms_.push_back(t);
    }
    return r;
}

WPoly WPoly::pow(unsigned e) const
{
    WPoly result(1);
    WPoly base = *this;
    while (e)
    {
        if (e & 1u)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

namespace
{

template <typename Op>
std::vector<WPoly::Term> merge(const std::vector<WPoly::Term> &a, const std::vector<WPoly::Term> &b, Op op)
{
    std::vector<WPoly::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size())
    {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
        {
            out.push_back(a[i++]);
        }
        else if (i == a.size() || b[j].first < a[i].first)
        {
            out.emplace_back(b[j].first, op(Rational(0), b[j].second));
            ++j;
        }
        else
        {
            Rational c = op(a[i].second, b[j].second);
            if (c != 0)
                out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

WPoly &WPoly::operator+=(const WPoly &o)
{
    if (o.terms_.empty())
        return *this;
    if (terms_.empty())
        return *this = o;
    terms_ = merge(terms_, o.terms_, [](const Rational &x, const Rational &y) { return Rational(x + y); });
    return *this;
}

WPoly &WPoly::operator-=(const WPoly &o)
{
    if (o.terms_.empty())
        return *this;
    terms_ = merge(terms_, o.terms_, [](const Rational &x, const Rational &y) { return Rational(x - y); });
    return *this;
}

WPoly &WPoly::operator*=(const Rational &c)
{
    if (c == 0)
    {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_)
        t.second *= c;
    return *this;
}

WPoly WPoly::operator-() const
{
    WPoly r = *this;
    for (auto &t : r.terms_)
        t.second = -t.second;
    return r;
}

WPoly operator*(const WPoly &a, const WPoly &b)
{
    int cap = a.degree() + b.degree();
    return WPoly::mul_truncated(a, b, cap < 0 ? 0 : cap);
}

WPoly WPoly::mul_truncated(const WPoly &a, const WPoly &b, int cap)
{
    if (a.is_zero() || b.is_zero())
        return {};
    if (a.terms_.size() == 1 && b.terms_.size() == 1)
    {
        int d = a.terms_[0].first + b.terms_[0].first;
        if (d > cap)
            return {};
        return monomial(d, a.terms_[0].second * b.terms_[0].second);
    }
    DenseAccumulator acc(std::min(cap, a.degree() + b.degree()));
    acc.add_product(a, b);
    return acc.take();
}

std::string WPoly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[d, c] : terms_)
    {
        Rational mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (d == 0)
            os << mag.get_str();
        else
        {
            if (mag != 1)
                os << mag.get_str() << '*';
            os << 'w';
            if (d > 1)
                os << '^' << d;
        }
    }
    return os.str();
}

void DenseAccumulator::reset()
{
    for (int d = 0; d <= top_; ++d)
        slots_[d] = 0;
    top_ = -1;
}

void DenseAccumulator::add_product(const WPoly &a, const WPoly &b)
{
    for (const auto &[da, ca] : a.terms_)
    {
        if (da > cap_)
            break;
        for (const auto &[db, cb] : b.terms_)
        {
            int d = da + db;
            if (d > cap_)
                break;
            mpq_mul(scratch_.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            mpq_add(slots_[d].get_mpq_t(), slots_[d].get_mpq_t(), scratch_.get_mpq_t());
            top_ = std::max(top_, d);
        }
    }
}

WPoly DenseAccumulator::take()
{
    WPoly r;
    for (int d = 0; d <= top_; ++d)
    {
        if (sgn(slots_[d]) != 0)
        {
            r.terms_.emplace_back(d, slots_[d]);
            slots_[d] = 0;
        }
    }
    top_ = -1;
    return r;
}

} // namespace sdpoly
