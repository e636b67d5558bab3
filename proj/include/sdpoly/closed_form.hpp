#pragma once

#include <sdpoly/qseries.hpp>

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace sdpoly::closed_form
{

// The twelve auxiliary q-series of the closed form.
enum class Tilde
{
    alpha,
    beta,
    gamma,
    delta,
    epsilon,
    zeta,
    eta,
    theta,
    iota,
    kappa,
    lambda,
    mu
};

inline constexpr std::array<Tilde, 12> kAllTildes = {Tilde::alpha, Tilde::beta,  Tilde::gamma, Tilde::delta,
                                                     Tilde::epsilon, Tilde::zeta, Tilde::eta,   Tilde::theta,
                                                     Tilde::iota,  Tilde::kappa, Tilde::lambda, Tilde::mu};

std::string_view name(Tilde t);
// Accepts "alpha" .. "mu"; throws std::invalid_argument otherwise.
Tilde tilde_from_name(std::string_view s);

// Every tilde series is a sum over i >= 1 of one parameterized term. The
// family fixes the q/w exponents and the (1-q) power; `exponent` is the power
// of (1 - q^i) that the overlined numbers stand for (and also the weight of
// the q^i/(1-q^i) summand in the derivative brackets); `extra_sign` turns
// (-3)^(i-1) into (-3)^i; `derivative` selects the plain term (0), the
// first-derivative bracket (1), or half the second-derivative bracket (2).
struct TildeRecipe
{
    enum class Family
    {
        // (-3)^(i-1) q^(i^2+2i-2) w^(i-1) / (1-q)^(2i-2) ...
        low,
        // (-3)^(i-1) q^(i^2+4i) w^i / (1-q)^(2i) ...
        high
    };
    Family family;
    int exponent;
    bool extra_sign;
    int derivative;
};

TildeRecipe recipe(Tilde t);

// The named series to order N with w replaced by `w` (WPoly::w() keeps it symbolic).
QSeries tilde(Tilde t, int order, const WPoly &w);
QSeries tilde_from_recipe(const TildeRecipe &r, int order, const WPoly &w);

struct TildeFamily
{
    std::array<QSeries, 12> series;
    const QSeries &operator[](Tilde t) const { return series[static_cast<std::size_t>(t)]; }
};

// All twelve series; computed in parallel.
TildeFamily tilde_family(int order, const WPoly &w);

// Polynomial factors multiplying each bracket of NUM and DEN.
enum class Prefactor
{
    one,
    one_minus_q_pow4,   // (1-q)^4
    one_minus_q_pow3,   // (1-q)^3
    q2w_one_minus_q_sq, // q^2 w (1-q)^2
    q2w_one_minus_q2,   // q^2 w (1-q^2)
    q2w_one_minus_q,    // q^2 w (1-q)
    q3w_one_minus_q,    // q^3 w (1-q)
    q3w                 // q^3 w
};

QSeries prefactor_series(Prefactor p, int order, const WPoly &w);

// coefficient * prefactor * product of tildes (empty product = 1).
struct Term
{
    int coefficient;
    Prefactor prefactor;
    std::vector<Tilde> product;
};

// Line-by-line transcription of the numerator and denominator.
const std::vector<Term> &num_terms();
const std::vector<Term> &den_terms();

QSeries evaluate_terms(std::span<const Term> terms, const TildeFamily &family, int order, const WPoly &w);

struct ClosedFormG
{
    QSeries num;
    QSeries den;
    QSeries g;
};

ClosedFormG assemble(int order, const WPoly &w);
// Same, from explicit term tables (used to inject faults in tests).
ClosedFormG assemble_from(std::span<const Term> num, std::span<const Term> den, int order, const WPoly &w);

// A1, B1, C1 recovered from the tilde family by solving the 3x3 linear
// system their definitions satisfy at t = 1; g = A1 + q^2 w/(1-q)^2 C1.
struct ClosedFormJets
{
    QSeries a1;
    QSeries b1;
    QSeries c1;
    QSeries g;
};

ClosedFormJets solve_jets(const TildeFamily &family, int order, const WPoly &w);
ClosedFormJets solve_jets(int order, const WPoly &w);

// Area generating function of column-convex polyominoes,
// q(1-q)^3 / (1 - 5q + 7q^2 - 4q^3), expanded by its linear recurrence.
std::vector<Integer> column_convex_coefficients(int order);
QSeries column_convex_g(int order);

} // namespace sdpoly::closed_form
