#include <sdpoly/closed_form.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace sdpoly::closed_form
{

namespace
{

constexpr std::array<std::string_view, 12> kNames = {"alpha", "beta",  "gamma", "delta", "epsilon", "zeta",
                                                     "eta",   "theta", "iota",  "kappa", "lambda",  "mu"};

// x -> c0 * x + 4 * sum_{k<i} x q^(p k)/(1-q^k)^p + e * x q^(p i)/(1-q^i)^p,
// for p = 1 (the first-derivative bracket) or p = 2 (its derivative).
QSeries bracket(const QSeries &x, long c0, int i, int e, int p)
{
    QSeries out = x;
    out *= Rational(c0);
    auto add_ratio = [&](int k, long weight) {
        QSeries part = x;
        part.shift(p * k);
        for (int r = 0; r < p; ++r)
            part.div_one_minus_qk(k);
        part *= Rational(weight);
        out += part;
    };
    for (int k = 1; k < i; ++k)
        add_ratio(k, 4);
    add_ratio(i, e);
    return out;
}

Integer power_of_minus_three(int e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, static_cast<unsigned long>(e));
    return e % 2 ? Integer(-r) : r;
}

} // namespace

std::string_view name(Tilde t) { return kNames[static_cast<std::size_t>(t)]; }

Tilde tilde_from_name(std::string_view s)
{
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == s)
            return kAllTildes[i];
    throw std::invalid_argument("unknown tilde series '" + std::string(s) + "'");
}

TildeRecipe recipe(Tilde t)
{
    using F = TildeRecipe::Family;
    switch (t)
    {
    case Tilde::alpha: return {F::low, 1, false, 0};
    case Tilde::beta: return {F::low, 2, false, 0};
    case Tilde::epsilon: return {F::low, 1, false, 1};
    case Tilde::zeta: return {F::low, 2, false, 1};
    case Tilde::iota: return {F::low, 1, false, 2};
    case Tilde::kappa: return {F::low, 2, false, 2};
    case Tilde::gamma: return {F::high, 3, false, 0};
    case Tilde::delta: return {F::high, 4, true, 0};
    case Tilde::eta: return {F::high, 3, false, 1};
    case Tilde::theta: return {F::high, 4, true, 1};
    case Tilde::lambda: return {F::high, 3, false, 2};
    case Tilde::mu: return {F::high, 4, true, 2};
    }
    throw std::invalid_argument("recipe: bad tilde");
}

QSeries tilde_from_recipe(const TildeRecipe &r, int order, const WPoly &w)
{
    if (order < 0)
        throw std::invalid_argument("tilde: negative order");
    if (r.derivative < 0 || r.derivative > 2)
        throw std::invalid_argument("tilde: derivative must be 0, 1 or 2");
    const bool low = r.family == TildeRecipe::Family::low;
    QSeries total(order);
    for (int i = 1;; ++i)
    {
        // Lowest q-degree of the i-th term; the denominators only raise it.
        const int qexp = low ? i * i + 2 * i - 2 : i * i + 4 * i;
        if (qexp > order)
            break;
        const int wexp = low ? i - 1 : i;
        const long c0 = low ? 2 * i - 2 : 2 * i;

        const Integer sign = power_of_minus_three(i - 1 + (r.extra_sign ? 1 : 0));
        QSeries term = QSeries::monomial(qexp, w.pow(static_cast<unsigned>(wexp)) * Rational(sign), order);
        for (int p = 0; p < c0; ++p)
            term.div_one_minus_qk(1);
        for (int k = 1; k < i; ++k)
            for (int p = 0; p < 4; ++p)
                term.div_one_minus_qk(k);
        for (int p = 0; p < r.exponent; ++p)
            term.div_one_minus_qk(i);

        if (r.derivative == 1)
        {
            term = bracket(term, c0, i, r.exponent, 1);
        }
        else if (r.derivative == 2)
        {
            QSeries squared = bracket(bracket(term, c0, i, r.exponent, 1), c0, i, r.exponent, 1);
            QSeries slope = bracket(term, -c0, i, r.exponent, 2);
            term = squared + slope;
            term *= Rational(1, 2);
        }
        total += term;
    }
    return total;
}

QSeries tilde(Tilde t, int order, const WPoly &w) { return tilde_from_recipe(recipe(t), order, w); }

TildeFamily tilde_family(int order, const WPoly &w)
{
    TildeFamily f;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < 12; ++i)
        f.series[i] = tilde(kAllTildes[i], order, w);
    return f;
}

QSeries prefactor_series(Prefactor p, int order, const WPoly &w)
{
    auto weighted = [&](int qdeg, std::initializer_list<long> poly) {
        QSeries s = QSeries::polynomial(poly, order);
        s.shift(qdeg);
        s.scale(w);
        return s;
    };
    switch (p)
    {
    case Prefactor::one: return QSeries::one(order);
    case Prefactor::one_minus_q_pow4: return QSeries::polynomial({1, -4, 6, -4, 1}, order);
    case Prefactor::one_minus_q_pow3: return QSeries::polynomial({1, -3, 3, -1}, order);
    case Prefactor::q2w_one_minus_q_sq: return weighted(2, {1, -2, 1});
    case Prefactor::q2w_one_minus_q2: return weighted(2, {1, 0, -1});
    case Prefactor::q2w_one_minus_q: return weighted(2, {1, -1});
    case Prefactor::q3w_one_minus_q: return weighted(3, {1, -1});
    case Prefactor::q3w: return weighted(3, {1});
    }
    throw std::invalid_argument("prefactor_series: bad prefactor");
}

namespace
{

using enum Tilde;
using P = Prefactor;

struct Bracket
{
    int multiplier;
    Prefactor prefactor;
    std::vector<std::pair<int, std::vector<Tilde>>> inner;
};

std::vector<Term> flatten(const std::vector<Bracket> &brackets)
{
    std::vector<Term> out;
    for (const auto &b : brackets)
        for (const auto &[c, prod] : b.inner)
            out.push_back({b.multiplier * c, b.prefactor, prod});
    return out;
}

// NUM = (1-q)^4 (...) + q^2 w (1-q)^2 (...) + 2 q^2 w (1-q^2) (...)
const std::vector<Bracket> kNum = {
    {1, P::one_minus_q_pow4, {{1, {alpha}}, {1, {gamma}}, {2, {alpha, eta}}, {-2, {gamma, epsilon}}}},
    {1,
     P::q2w_one_minus_q_sq,
     {{1, {iota}},
      {1, {lambda}},
      {-1, {alpha, kappa}},
      {-1, {alpha, mu}},
      {1, {beta, iota}},
      {1, {beta, lambda}},
      {-1, {gamma, kappa}},
      {-1, {gamma, mu}},
      {1, {delta, iota}},
      {1, {delta, lambda}},
      {-2, {epsilon, lambda}},
      {2, {eta, iota}},
      {2, {alpha, zeta, lambda}},
      {-2, {alpha, eta, kappa}},
      {-2, {alpha, eta, mu}},
      {2, {alpha, theta, lambda}},
      {-2, {beta, epsilon, lambda}},
      {2, {beta, eta, iota}},
      {2, {gamma, epsilon, kappa}},
      {2, {gamma, epsilon, mu}},
      {-2, {gamma, zeta, iota}},
      {-2, {gamma, theta, iota}},
      {-2, {delta, epsilon, lambda}},
      {2, {delta, eta, iota}}}},
    {2, P::q2w_one_minus_q2, {{1, {alpha, lambda}}, {-1, {gamma, iota}}}},
};

// DEN = (1-q)^4 (...) - 2(1-q)^3 (...) - 2 q^2 w (1-q)^2 (...) - 4 q^2 w (1-q) (...)
//       - 2 q^3 w (1-q) (...) - 4 q^3 w (...)
const std::vector<Bracket> kDen = {
    {1,
     P::one_minus_q_pow4,
     {{1, {}},
      {-1, {beta}},
      {1, {delta}},
      {-1, {epsilon}},
      {1, {eta}},
      {-1, {alpha, zeta}},
      {1, {alpha, theta}},
      {1, {beta, epsilon}},
      {-1, {beta, eta}},
      {1, {gamma, zeta}},
      {-1, {gamma, theta}},
      {-1, {delta, epsilon}},
      {1, {delta, eta}}}},
    {-2, P::one_minus_q_pow3, {{1, {gamma}}, {1, {alpha, eta}}, {-1, {gamma, epsilon}}}},
    {-2,
     P::q2w_one_minus_q_sq,
     {{1, {kappa}},
      {-1, {beta, mu}},
      {1, {delta, kappa}},
      {-1, {epsilon, kappa}},
      {1, {zeta, iota}},
      {-1, {zeta, lambda}},
      {1, {eta, kappa}},
      {-1, {alpha, zeta, mu}},
      {1, {alpha, theta, kappa}},
      {1, {beta, epsilon, mu}},
      {-1, {beta, eta, mu}},
      {-1, {beta, theta, iota}},
      {1, {beta, theta, lambda}},
      {1, {gamma, zeta, mu}},
      {-1, {gamma, theta, kappa}},
      {-1, {delta, epsilon, kappa}},
      {1, {delta, zeta, iota}},
      {-1, {delta, zeta, lambda}},
      {1, {delta, eta, kappa}}}},
    {-4,
     P::q2w_one_minus_q,
     {{1, {beta, lambda}},
      {-1, {gamma, kappa}},
      {1, {alpha, zeta, lambda}},
      {-1, {alpha, eta, kappa}},
      {-1, {beta, epsilon, lambda}},
      {1, {beta, eta, iota}},
      {1, {gamma, epsilon, kappa}},
      {-1, {gamma, zeta, iota}}}},
    {-2,
     P::q3w_one_minus_q,
     {{1, {iota}},
      {1, {alpha, kappa}},
      {-1, {alpha, mu}},
      {-1, {beta, iota}},
      {1, {delta, iota}},
      {-1, {epsilon, lambda}},
      {1, {eta, iota}},
      {-1, {alpha, zeta, lambda}},
      {1, {alpha, eta, kappa}},
      {-1, {alpha, eta, mu}},
      {1, {alpha, theta, lambda}},
      {1, {beta, epsilon, lambda}},
      {-1, {beta, eta, iota}},
      {-1, {gamma, epsilon, kappa}},
      {1, {gamma, epsilon, mu}},
      {1, {gamma, zeta, iota}},
      {-1, {gamma, theta, iota}},
      {-1, {delta, epsilon, lambda}},
      {1, {delta, eta, iota}}}},
    {-4, P::q3w, {{1, {alpha, lambda}}, {-1, {gamma, iota}}}},
};

} // namespace

const std::vector<Term> &num_terms()
{
    static const std::vector<Term> terms = flatten(kNum);
    return terms;
}

const std::vector<Term> &den_terms()
{
    static const std::vector<Term> terms = flatten(kDen);
    return terms;
}

QSeries evaluate_terms(std::span<const Term> terms, const TildeFamily &family, int order, const WPoly &w)
{
    // Products are commutative; each distinct one is formed once, longer
    // products reusing their prefix.
    std::map<std::vector<Tilde>, QSeries> products;
    auto product = [&](std::vector<Tilde> key) -> const QSeries & {
        std::sort(key.begin(), key.end());
        auto found = products.find(key);
        if (found != products.end())
            return found->second;
        QSeries value = QSeries::one(order);
        std::vector<Tilde> prefix;
        for (Tilde t : key)
        {
            prefix.push_back(t);
            auto hit = products.find(prefix);
            if (hit != products.end())
            {
                value = hit->second;
                continue;
            }
            value = prefix.size() == 1 ? family[t] : mul(value, family[t]);
            products.emplace(prefix, value);
        }
        if (key.empty())
            products.emplace(key, value);
        return products.at(key);
    };

    std::map<Prefactor, QSeries> grouped;
    for (const Term &term : terms)
    {
        QSeries contribution = product(term.product);
        contribution *= Rational(term.coefficient);
        auto [it, inserted] = grouped.try_emplace(term.prefactor, QSeries(order));
        it->second += contribution;
    }
    QSeries total(order);
    for (const auto &[pre, inner] : grouped)
        total += mul(prefactor_series(pre, order, w), inner);
    return total;
}

ClosedFormG assemble_from(std::span<const Term> num, std::span<const Term> den, int order, const WPoly &w)
{
    const TildeFamily family = tilde_family(order, w);
    ClosedFormG r;
    r.num = evaluate_terms(num, family, order, w);
    r.den = evaluate_terms(den, family, order, w);
    r.g = mul(r.num, inv(r.den));
    return r;
}

ClosedFormG assemble(int order, const WPoly &w) { return assemble_from(num_terms(), den_terms(), order, w); }

ClosedFormJets solve_jets(const TildeFamily &f, int order, const WPoly &w)
{
    const QSeries one = QSeries::one(order);
    QSeries x3 = QSeries::monomial(3, w * Rational(2), order);
    x3 = mul(x3, one_minus_q_pow_neg(3, order));
    QSeries y2 = QSeries::monomial(2, w * Rational(2), order);
    y2 = mul(y2, one_minus_q_pow_neg(2, order));
    QSeries z1 = one_minus_q_pow_neg(1, order);
    z1 *= 2;

    // Each unknown V in {A1, B1, C1} satisfies V = P X + Q Y + R Z - D A1 with
    // X = 1 + B1 + x3 C1, Y = A1 + y2 C1, Z = 1 + z1 A1 - B1.
    const std::array<std::array<Tilde, 4>, 3> rows = {{{Tilde::alpha, Tilde::beta, Tilde::gamma, Tilde::delta},
                                                       {Tilde::epsilon, Tilde::zeta, Tilde::eta, Tilde::theta},
                                                       {Tilde::iota, Tilde::kappa, Tilde::lambda, Tilde::mu}}};
    std::array<std::array<QSeries, 3>, 3> m;
    std::array<QSeries, 3> rhs;
    for (int r = 0; r < 3; ++r)
    {
        const QSeries &P = f[rows[r][0]];
        const QSeries &Q = f[rows[r][1]];
        const QSeries &R = f[rows[r][2]];
        const QSeries &D = f[rows[r][3]];
        m[r][0] = -(Q + mul(R, z1) - D);
        m[r][1] = -(P - R);
        m[r][2] = -(mul(P, x3) + mul(Q, y2));
        m[r][r] += one;
        rhs[r] = P + R;
    }

    // Diagonal entries have constant term 1, so elimination needs no pivoting.
    for (int c = 0; c < 3; ++c)
    {
        const QSeries pivot_inv = inv(m[c][c]);
        for (int r = c + 1; r < 3; ++r)
        {
            const QSeries factor = mul(m[r][c], pivot_inv);
            for (int j = c; j < 3; ++j)
                m[r][j] -= mul(factor, m[c][j]);
            rhs[r] -= mul(factor, rhs[c]);
        }
    }
    std::array<QSeries, 3> x;
    for (int r = 2; r >= 0; --r)
    {
        QSeries acc = rhs[r];
        for (int j = r + 1; j < 3; ++j)
            acc -= mul(m[r][j], x[j]);
        x[r] = mul(acc, inv(m[r][r]));
    }

    ClosedFormJets out{x[0], x[1], x[2], QSeries(order)};
    QSeries weight = QSeries::monomial(2, w, order);
    weight = mul(weight, one_minus_q_pow_neg(2, order));
    out.g = out.a1 + mul(weight, out.c1);
    return out;
}

ClosedFormJets solve_jets(int order, const WPoly &w) { return solve_jets(tilde_family(order, w), order, w); }

std::vector<Integer> column_convex_coefficients(int order)
{
    if (order < 0)
        throw std::invalid_argument("column_convex_coefficients: negative order");
    // c_n = 5 c_{n-1} - 7 c_{n-2} + 4 c_{n-3} + [q^n] q(1-q)^3
    const std::array<long, 5> numerator = {0, 1, -3, 3, -1};
    std::vector<Integer> c(static_cast<std::size_t>(order) + 1);
    for (int n = 0; n <= order; ++n)
    {
        Integer v = n < 5 ? Integer(numerator[n]) : Integer(0);
        if (n >= 1)
            v += 5 * c[n - 1];
        if (n >= 2)
            v -= 7 * c[n - 2];
        if (n >= 3)
            v += 4 * c[n - 3];
        c[n] = v;
    }
    return c;
}

QSeries column_convex_g(int order)
{
    QSeries s(order);
    const auto c = column_convex_coefficients(order);
    for (int n = 0; n <= order; ++n)
        s.set(n, WPoly(Rational(c[n])));
    return s;
}

} // namespace sdpoly::closed_form
