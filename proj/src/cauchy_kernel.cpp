#include <sdpoly/qseries.hpp>

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sdpoly::kernel
{

namespace
{

// First index holding a nonzero coefficient; lets both kernels skip the
// leading zeros that most series here carry.
std::size_t first_nonzero(std::span<const WPoly> s)
{
    std::size_t i = 0;
    while (i < s.size() && s[i].is_zero())
        ++i;
    return i;
}

} // namespace

std::vector<WPoly> cauchy_serial(std::span<const WPoly> a, std::span<const WPoly> b, std::size_t out_len, int wcap)
{
    std::vector<WPoly> out(out_len);
    for (std::size_t n = 0; n < out_len; ++n)
    {
        WPoly sum;
        for (std::size_t i = 0; i <= n && i < a.size(); ++i)
        {
            std::size_t j = n - i;
            if (j >= b.size())
                continue;
            sum += WPoly::mul_truncated(a[i], b[j], wcap);
        }
        out[n] = std::move(sum);
    }
    return out;
}

std::vector<WPoly> cauchy_parallel(std::span<const WPoly> a, std::span<const WPoly> b, std::size_t out_len, int wcap)
{
    std::vector<WPoly> out(out_len);
    const std::size_t a0 = first_nonzero(a);
    const std::size_t b0 = first_nonzero(b);
    if (a0 == a.size() || b0 == b.size())
        return out;
    const auto len = static_cast<long long>(out_len);

#pragma omp parallel
    {
        DenseAccumulator acc(wcap);
        // Work per output grows linearly with n; dynamic chunks keep threads balanced.
#pragma omp for schedule(dynamic, 4)
        for (long long nn = static_cast<long long>(a0 + b0); nn < len; ++nn)
        {
            const auto n = static_cast<std::size_t>(nn);
            const std::size_t lo = n >= b.size() ? std::max(a0, n - b.size() + 1) : a0;
            const std::size_t hi = std::min(a.size() - 1, n - b0);
            for (std::size_t i = lo; i <= hi; ++i)
            {
                const WPoly &x = a[i];
                const WPoly &y = b[n - i];
                if (!x.is_zero() && !y.is_zero())
                    acc.add_product(x, y);
            }
            out[n] = acc.take();
        }
    }
    return out;
}

} // namespace sdpoly::kernel
