#pragma once

#include <sdpoly/closed_form.hpp>
#include <sdpoly/qseries.hpp>
#include <sdpoly/qtseries.hpp>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sdpoly::verify
{

// Smallest (n, k) at which two series differ. k is absent when both series
// are w-free, i.e. when w was fixed to a number.
struct Mismatch
{
    int n = 0;
    std::optional<int> k;
    // t-degree, for series in q and t.
    std::optional<int> h;
    std::string expected;
    std::string got;
};

std::optional<Mismatch> first_mismatch(const QSeries &expected, const QSeries &got);
std::optional<Mismatch> first_mismatch(const QTSeries &expected, const QTSeries &got);
std::string describe(const Mismatch &m);
// ⟨q^n w^k⟩ s == 0 whenever n < 5k - 3; returns the first offending term.
std::optional<Mismatch> sparsity_violation(const QSeries &s);

struct Check
{
    explicit Check(std::string n = {}) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    std::vector<std::string> lines;
    std::optional<Mismatch> mismatch;
};

struct Options
{
    int order = 64;
    WPoly w = WPoly::w();
    // Oracle comparisons run for areas 1..oracle_max; 0 skips them.
    int oracle_max = 0;
    // Replacement term tables for the closed form (fault injection).
    std::optional<std::vector<closed_form::Term>> num;
    std::optional<std::vector<closed_form::Term>> den;
};

struct Report
{
    std::vector<Check> checks;
    bool all_pass() const;
    // The failing check whose counterexample has the smallest n, if any.
    const Check *first_failure() const;
};

// Runs every cross-check. Throws ResourceError if oracle_max exceeds the
// oracle ceiling and std::invalid_argument for order < 1.
Report run(const Options &opts);

} // namespace sdpoly::verify
