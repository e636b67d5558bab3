#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace sdpoly
{

using Rational = mpq_class;
using Integer = mpz_class;

// Polynomial in w with exact rational coefficients.
//
// Stored sparsely as (degree, coefficient) pairs sorted by degree; zero
// coefficients are never stored, so the zero polynomial has no terms.
class WPoly
{
public:
    using Term = std::pair<int, Rational>;

    WPoly() = default;
    WPoly(const Rational &c);
    WPoly(long c) : WPoly(Rational(c)) {}

    static WPoly monomial(int degree, const Rational &c);
    // The indeterminate itself.
    static WPoly w() { return monomial(1, 1); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
    // -1 for the zero polynomial.
    int degree() const noexcept { return terms_.empty() ? -1 : terms_.back().first; }
    Rational coeff(int degree) const;
    const std::vector<Term> &terms() const noexcept { return terms_; }

    Rational eval(const Rational &w) const;
    // Drops every term of degree > cap.
    WPoly truncated(int cap) const;
    WPoly pow(unsigned e) const;

    WPoly &operator+=(const WPoly &o);
    WPoly &operator-=(const WPoly &o);
    WPoly &operator*=(const Rational &c);
    WPoly operator-() const;

    friend WPoly operator+(WPoly a, const WPoly &b) { return a += b; }
    friend WPoly operator-(WPoly a, const WPoly &b) { return a -= b; }
    friend WPoly operator*(WPoly a, const Rational &c) { return a *= c; }
    friend WPoly operator*(const WPoly &a, const WPoly &b);
    friend bool operator==(const WPoly &a, const WPoly &b) { return a.terms_ == b.terms_; }

    // Product with every term of degree > cap dropped.
    static WPoly mul_truncated(const WPoly &a, const WPoly &b, int cap);

    // "0", "3", "750 + 8*w", "1/2*w^2 - w".
    std::string to_string() const;

private:
    // Builds from a dense coefficient buffer, skipping zeros.
    friend class DenseAccumulator;
    std::vector<Term> terms_;
};

// Scratch buffer for summing many WPoly products without reallocating.
class DenseAccumulator
{
public:
    explicit DenseAccumulator(int cap) : slots_(static_cast<std::size_t>(cap) + 1), cap_(cap) {}

    void reset();
    // slots += a * b, terms above cap discarded.
    void add_product(const WPoly &a, const WPoly &b);
    WPoly take();

private:
    std::vector<Rational> slots_;
    Rational scratch_;
    int cap_;
    int top_ = -1;
};

} // namespace sdpoly
