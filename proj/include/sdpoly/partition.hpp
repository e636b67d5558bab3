#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace sdpoly
{

// The twelve blocks S_alpha .. S_mu partitioning the polyominoes that end
// with a simplex column.
enum class SPart
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

inline constexpr std::array<SPart, 12> kAllParts = {SPart::alpha,   SPart::beta, SPart::gamma, SPart::delta,
                                                    SPart::epsilon, SPart::zeta, SPart::eta,   SPart::theta,
                                                    SPart::iota,    SPart::kappa, SPart::lambda, SPart::mu};

constexpr std::string_view part_name(SPart p)
{
    constexpr std::array<std::string_view, 12> names = {"alpha", "beta",  "gamma", "delta", "epsilon", "zeta",
                                                        "eta",   "theta", "iota",  "kappa", "lambda",  "mu"};
    return names[static_cast<std::size_t>(p)];
}

// Pairs whose blocks are exchanged by reflecting in a horizontal line.
inline constexpr std::array<std::pair<SPart, SPart>, 4> kMirrorPairs = {
    {{SPart::delta, SPart::zeta}, {SPart::epsilon, SPart::eta}, {SPart::iota, SPart::lambda}, {SPart::kappa, SPart::mu}}};

} // namespace sdpoly
