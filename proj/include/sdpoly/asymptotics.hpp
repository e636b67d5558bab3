#pragma once

#include <sdpoly/qseries.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sdpoly::asymptotics
{

using Real = mpf_class;

// Decimal digits -> mpf precision in bits, with guard bits.
unsigned long precision_bits(int digits);
// x rounded half-up to `places` decimals, as "3.522019812882".
std::string round_decimal(const Real &x, int places);
std::string round_decimal(const Rational &x, int places);

struct AsymptoticReport
{
    int order = 0;
    int digits = 0;

    // Consecutive-coefficient ratio at n = order, working precision.
    Real growth_full;
    std::string growth;         // rounded to 12 decimals
    int growth_stabilization = 0; // first n from which the rounded ratio no longer changes
    std::string growth_aitken;  // Aitken delta-squared on the last three ratios, 12 decimals

    // coefficient / growth_full^n at n = order.
    Real amplitude_full;
    std::string amplitude;
    int amplitude_stabilization = 0;

    std::optional<Real> pole_full;
    std::string pole;
    // |pole * growth - 1|; absent without a pole.
    std::optional<double> reciprocal_error;

    bool conclusive = false;
};

// Ratio-method estimates of growth constant and amplitude from the
// coefficients of a w-free series. Throws std::domain_error if a coefficient
// in degrees 1..order is not a positive rational; std::invalid_argument if
// order < 3 or digits < 16.
AsymptoticReport ratio_analysis(const QSeries &g, int digits);

// Smallest positive root of an exact polynomial (coefficients low degree
// first), located by scanning for a sign change on (0, 1) and bisecting.
// Throws Inconclusive if no sign change is found.
Real pole_from_polynomial(const std::vector<Rational> &coeffs, int digits);

// Smallest positive root of the function a truncated series represents.
// Points where the estimated tail sum_{n > N} d_n x^n (geometric profile of
// the last ten coefficients) is not below `tail_tolerance` are untrusted; a
// sign change must also exceed the tail bound. Throws Inconclusive otherwise.
Real pole_from_series(const QSeries &den, int digits, double tail_tolerance = 1e-20);

// Tail estimate used by pole_from_series; nullopt where untrusted (r x >= 1).
std::optional<Real> tail_bound(const QSeries &den, const Real &x, int digits);

// Fills in pole, reciprocal error and the conclusive flag.
void attach_pole(AsymptoticReport &report, const Real &pole, double consistency_tolerance = 1e-10);

// End to end for a fixed w: closed-form G to `order`, ratio analysis, and the
// pole (exact cubic for w = 0, truncated denominator otherwise).
AsymptoticReport analyze(const Rational &w, int order, int digits);

} // namespace sdpoly::asymptotics
