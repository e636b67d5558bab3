#pragma once

#include <sdpoly/partition.hpp>
#include <sdpoly/qseries.hpp>
#include <sdpoly/qtseries.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sdpoly::oracle
{

struct Cell
{
    int x;
    int y;
    friend auto operator<=>(const Cell &, const Cell &) = default;
};

// A fixed polyomino: a nonempty edge-connected cell set, translated so that
// min x = 0 and min y = 0. Two polyominoes are equal iff their cell sets are.
class Polyomino
{
public:
    // Normalizes and validates; throws std::invalid_argument for empty,
    // duplicated or disconnected input.
    static Polyomino from_cells(std::vector<Cell> cells);

    const std::vector<Cell> &cells() const noexcept { return cells_; }
    int area() const noexcept { return static_cast<int>(cells_.size()); }
    // Reflection in a horizontal line (y -> -y), renormalized.
    Polyomino mirrored() const;
    // Bitmask of occupied rows per column, left to right.
    std::vector<std::uint64_t> column_masks() const;

    friend bool operator==(const Polyomino &, const Polyomino &) = default;

private:
    std::vector<Cell> cells_;
};

// Class labels. `all` covers every polyomino; `s` is simplex-duplex ending
// in a simplex column; `s_alpha` .. `s_mu` are its blocks.
enum class Label : int
{
    all,
    column_convex,
    column_duplex,
    simplex_duplex,
    s,
    ends_duplex,
    s_alpha,
    s_beta,
    s_gamma,
    s_delta,
    s_epsilon,
    s_zeta,
    s_eta,
    s_theta,
    s_iota,
    s_kappa,
    s_lambda,
    s_mu,
    count_
};

inline constexpr int kLabelCount = static_cast<int>(Label::count_);

constexpr Label part_label(SPart p) { return static_cast<Label>(static_cast<int>(Label::s_alpha) + static_cast<int>(p)); }
std::string label_name(Label l);
// Inverse of label_name; throws std::invalid_argument.
Label label_from_name(const std::string &s);

struct Column
{
    int x;
    // Connected components as inclusive [bottom, top] row ranges, bottom first.
    std::vector<std::pair<int, int>> components;
    int height() const;
};

struct ColumnDecomposition
{
    std::vector<Column> columns;
    int duplex_count = 0;
    int last_height = 0;
    // Present only when the polyomino is simplex-duplex with at least two
    // simplex columns (pivots) or at least one duplex column (inner pivots).
    std::optional<Cell> lower_pivot;
    std::optional<Cell> upper_pivot;
    std::optional<Cell> lower_inner_pivot;
    std::optional<Cell> upper_inner_pivot;
};

struct Classification
{
    ColumnDecomposition decomposition;
    std::uint32_t labels = 0; // bit i set <=> Label(i) applies
    std::optional<SPart> part;
    // How many of the block conditions matched; exactly 1 for members of S.
    int part_matches = 0;

    bool has(Label l) const { return (labels >> static_cast<int>(l)) & 1u; }
};

// Column-level facts shared by the enumerator's hot path and classify().
namespace columns
{

int component_count(std::uint64_t mask);
// Index of the second-rightmost simplex column, counting simplex columns only.
std::optional<int> second_last_simplex(std::span<const std::uint64_t> cols);
// Index of the second-rightmost column of any kind.
std::optional<int> second_last(std::span<const std::uint64_t> cols);
std::optional<int> last_duplex(std::span<const std::uint64_t> cols);
std::optional<Cell> lower_pivot(std::span<const std::uint64_t> cols);
std::optional<Cell> upper_pivot(std::span<const std::uint64_t> cols);
std::optional<Cell> lower_inner_pivot(std::span<const std::uint64_t> cols);
std::optional<Cell> upper_inner_pivot(std::span<const std::uint64_t> cols);

struct Summary
{
    std::uint32_t labels = 0;
    int duplex_count = 0;
    int last_height = 0;
    int part = -1; // SPart index or -1
    int part_matches = 0;
};

Summary classify(std::span<const std::uint64_t> cols);

} // namespace columns

Classification classify(const Polyomino &p);

// Exact counts keyed by (area, duplex columns, last-column height, label).
class CountTable
{
public:
    explicit CountTable(int n_max = 0);

    int n_max() const noexcept { return n_max_; }
    std::uint64_t count(int n, int k, int h, Label l) const;
    std::uint64_t count(int n, int k, Label l) const;
    std::uint64_t count(int n, Label l) const;

    void add(int n, int k, int h, std::uint32_t labels);
    CountTable &operator+=(const CountTable &o);
    friend bool operator==(const CountTable &, const CountTable &) = default;

    // Members of S whose block conditions matched zero or several blocks.
    std::uint64_t unclassified() const noexcept { return unclassified_; }
    std::uint64_t multiply_classified() const noexcept { return multiply_classified_; }
    void note_part_matches(int matches);

private:
    std::size_t index(int n, int k, int h, Label l) const;
    int n_max_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t unclassified_ = 0;
    std::uint64_t multiply_classified_ = 0;
};

// Safety ceiling on n_max: SDPOLY_ORACLE_CEILING if set, else 14.
int ceiling();

struct EnumerateOptions
{
    // Run the parallel enumerator (partitioned by early branch choices).
    bool parallel = true;
    // Check that no polyomino is generated twice (hash set of canonical cell lists).
    bool uniqueness_audit = false;
};

// Every fixed polyomino of area <= n_max exactly once, classified and counted.
// Throws ResourceError if n_max exceeds ceiling(), std::invalid_argument if n_max < 1.
CountTable enumerate(int n_max, const EnumerateOptions &opts = {});

// Serial enumeration with a visitor per polyomino (for dumps and audits).
void for_each_polyomino(int n_max, const std::function<void(const Polyomino &, const Classification &)> &visit);

// One line per polyomino: "(x,y) (x,y) ... | label label ... k=K h=H".
std::string dump_line(const Polyomino &p, const Classification &c);

// G-style series sum_{n,k} count(n,k,l) q^n w^k, with w replaced by `w`.
// Throws std::invalid_argument if order > table.n_max().
QSeries refined_series(const CountTable &table, Label l, int order, const WPoly &w);
// A-style series sum count(n,k,h,l) q^n t^h w^k.
QTSeries refined_series_qt(const CountTable &table, Label l, int order, const WPoly &w);

} // namespace sdpoly::oracle
