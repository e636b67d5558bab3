#include <sdpoly/error.hpp>
#include <sdpoly/oracle.hpp>

#include <omp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace sdpoly::oracle
{

namespace
{

constexpr std::array<const char *, kLabelCount> kLabelNames = {
    "all",     "column-convex", "column-duplex", "simplex-duplex", "S",       "ends-duplex",
    "S-alpha", "S-beta",        "S-gamma",       "S-delta",        "S-epsilon", "S-zeta",
    "S-eta",   "S-theta",       "S-iota",        "S-kappa",        "S-lambda",  "S-mu"};

constexpr std::uint32_t bit(Label l) { return 1u << static_cast<int>(l); }

int bottom(std::uint64_t m) { return std::countr_zero(m); }
int top(std::uint64_t m) { return 63 - std::countl_zero(m); }
std::uint64_t lowest_run(std::uint64_t m) { return m & ~(m + (m & (~m + 1))); }
bool has_row(std::uint64_t m, int y) { return y >= 0 && y < 64 && ((m >> y) & 1u); }

} // namespace

std::string label_name(Label l) { return kLabelNames.at(static_cast<std::size_t>(l)); }

Label label_from_name(const std::string &s)
{
    for (int i = 0; i < kLabelCount; ++i)
        if (s == kLabelNames[i])
            return static_cast<Label>(i);
    throw std::invalid_argument("unknown class label '" + s + "'");
}

// ---------------------------------------------------------------------------
// Polyomino

Polyomino Polyomino::from_cells(std::vector<Cell> cells)
{
    if (cells.empty())
        throw std::invalid_argument("Polyomino: no cells");
    int min_x = cells[0].x, min_y = cells[0].y;
    for (const Cell &c : cells)
    {
        min_x = std::min(min_x, c.x);
        min_y = std::min(min_y, c.y);
    }
    for (Cell &c : cells)
    {
        c.x -= min_x;
        c.y -= min_y;
    }
    std::sort(cells.begin(), cells.end());
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
        throw std::invalid_argument("Polyomino: duplicate cell");
    if (std::any_of(cells.begin(), cells.end(), [](const Cell &c) { return c.y >= 64; }))
        throw std::invalid_argument("Polyomino: taller than 64 rows");

    // Breadth-first search over edge neighbours.
    std::set<Cell> remaining(cells.begin(), cells.end());
    std::queue<Cell> frontier;
    frontier.push(cells.front());
    remaining.erase(cells.front());
    while (!frontier.empty())
    {
        Cell c = frontier.front();
        frontier.pop();
        for (Cell nb : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}})
        {
            auto it = remaining.find(nb);
            if (it != remaining.end())
            {
                remaining.erase(it);
                frontier.push(nb);
            }
        }
    }
    if (!remaining.empty())
        throw std::invalid_argument("Polyomino: cells are not edge-connected");
    Polyomino p;
    p.cells_ = std::move(cells);
    return p;
}

Polyomino Polyomino::mirrored() const
{
    std::vector<Cell> c = cells_;
    for (Cell &x : c)
        x.y = -x.y;
    return from_cells(std::move(c));
}

std::vector<std::uint64_t> Polyomino::column_masks() const
{
    std::vector<std::uint64_t> cols(static_cast<std::size_t>(cells_.back().x) + 1);
    for (const Cell &c : cells_)
        cols[c.x] |= std::uint64_t{1} << c.y;
    return cols;
}

int Column::height() const
{
    int h = 0;
    for (const auto &[lo, hi] : components)
        h += hi - lo + 1;
    return h;
}

// ---------------------------------------------------------------------------
// Column-level classification

namespace columns
{

int component_count(std::uint64_t mask) { return std::popcount(mask & ~(mask << 1)); }

std::optional<int> second_last_simplex(std::span<const std::uint64_t> cols)
{
    int seen = 0;
    for (int i = static_cast<int>(cols.size()) - 1; i >= 0; --i)
        if (component_count(cols[i]) == 1 && ++seen == 2)
            return i;
    return std::nullopt;
}

std::optional<int> second_last(std::span<const std::uint64_t> cols)
{
    if (cols.size() < 2)
        return std::nullopt;
    return static_cast<int>(cols.size()) - 2;
}

std::optional<int> last_duplex(std::span<const std::uint64_t> cols)
{
    for (int i = static_cast<int>(cols.size()) - 1; i >= 0; --i)
        if (component_count(cols[i]) == 2)
            return i;
    return std::nullopt;
}

std::optional<Cell> lower_pivot(std::span<const std::uint64_t> cols)
{
    auto s = second_last_simplex(cols);
    if (!s)
        return std::nullopt;
    return Cell{*s + 1, bottom(cols[*s])};
}

std::optional<Cell> upper_pivot(std::span<const std::uint64_t> cols)
{
    auto s = second_last_simplex(cols);
    if (!s)
        return std::nullopt;
    return Cell{*s + 1, top(cols[*s])};
}

std::optional<Cell> lower_inner_pivot(std::span<const std::uint64_t> cols)
{
    auto d = last_duplex(cols);
    if (!d)
        return std::nullopt;
    return Cell{*d + 1, top(lowest_run(cols[*d]))};
}

std::optional<Cell> upper_inner_pivot(std::span<const std::uint64_t> cols)
{
    auto d = last_duplex(cols);
    if (!d)
        return std::nullopt;
    const std::uint64_t upper = cols[*d] ^ lowest_run(cols[*d]);
    return Cell{*d + 1, bottom(upper)};
}

namespace
{

// The block conditions, each tested literally; the caller counts matches.
std::uint32_t part_conditions(std::span<const std::uint64_t> cols)
{
    const int L = static_cast<int>(cols.size());
    const int last = L - 1;
    auto contains = [&](const std::optional<Cell> &c, int column, std::uint64_t rows) {
        return c && c->x == column && has_row(rows, c->y);
    };
    std::uint32_t hits = 0;
    auto hit = [&](SPart p) { hits |= 1u << static_cast<int>(p); };

    int simplex = 0;
    for (std::uint64_t c : cols)
        simplex += component_count(c) == 1;
    if (simplex == 1)
    {
        hit(SPart::alpha);
        return hits;
    }

    const int sl = *second_last(cols);
    const auto lp = lower_pivot(cols);
    const auto up = upper_pivot(cols);
    if (component_count(cols[sl]) == 1)
    {
        if (contains(lp, last, cols[last]))
            hit(SPart::beta);
        else
            hit(SPart::gamma);
        return hits;
    }

    // Second-last column is duplex; the block conditions all require a
    // simplex third-last column.
    if (L < 3 || component_count(cols[L - 3]) != 1)
        return hits;
    const std::uint64_t lower = lowest_run(cols[sl]);
    const std::uint64_t upper = cols[sl] ^ lower;
    const std::uint64_t third = cols[L - 3];
    const std::uint64_t lastc = cols[last];
    auto in_hole = [&](const std::optional<Cell> &c) {
        return c && c->x == sl && c->y > top(lower) && c->y < bottom(upper);
    };
    const bool lower_meets_third = (lower & third) != 0;
    const bool upper_meets_third = (upper & third) != 0;
    const bool last_meets_lower = (lastc & lower) != 0;
    const bool last_meets_upper = (lastc & upper) != 0;
    const bool both_meet_third = lower_meets_third && upper_meets_third;
    const auto lip = lower_inner_pivot(cols);
    const auto uip = upper_inner_pivot(cols);

    if (!lower_meets_third && contains(lp, sl, upper))
        hit(SPart::delta);
    if (!lower_meets_third && in_hole(lp))
        hit(SPart::epsilon);
    if (!upper_meets_third && contains(up, sl, lower))
        hit(SPart::zeta);
    if (!upper_meets_third && in_hole(up))
        hit(SPart::eta);
    if (both_meet_third && last_meets_lower && last_meets_upper)
        hit(SPart::theta);
    if (both_meet_third && last_meets_lower && !last_meets_upper)
        hit(contains(lip, last, lastc) ? SPart::kappa : SPart::iota);
    if (both_meet_third && last_meets_upper && !last_meets_lower)
        hit(contains(uip, last, lastc) ? SPart::mu : SPart::lambda);
    return hits;
}

} // namespace

Summary classify(std::span<const std::uint64_t> cols)
{
    Summary s;
    s.labels = bit(Label::all);
    const int L = static_cast<int>(cols.size());
    bool convex = true, duplex = true, adjacent_duplex = false;
    int prev = 0;
    for (int i = 0; i < L; ++i)
    {
        const int c = component_count(cols[i]);
        convex &= c == 1;
        duplex &= c <= 2;
        adjacent_duplex |= c == 2 && prev == 2;
        s.duplex_count += c == 2;
        prev = c;
    }
    s.last_height = std::popcount(cols[L - 1]);
    if (convex)
        s.labels |= bit(Label::column_convex);
    if (!duplex)
        return s;
    s.labels |= bit(Label::column_duplex);
    if (adjacent_duplex)
        return s;
    s.labels |= bit(Label::simplex_duplex);
    if (component_count(cols[L - 1]) == 2)
    {
        s.labels |= bit(Label::ends_duplex);
        return s;
    }
    s.labels |= bit(Label::s);
    const std::uint32_t hits = part_conditions(cols);
    s.part_matches = std::popcount(hits);
    if (s.part_matches == 1)
    {
        s.part = std::countr_zero(hits);
        s.labels |= bit(part_label(static_cast<SPart>(s.part)));
    }
    return s;
}

} // namespace columns

Classification classify(const Polyomino &p)
{
    const auto cols = p.column_masks();
    const auto summary = columns::classify(cols);
    Classification c;
    c.labels = summary.labels;
    c.part_matches = summary.part_matches;
    if (summary.part >= 0)
        c.part = static_cast<SPart>(summary.part);

    auto &d = c.decomposition;
    d.duplex_count = summary.duplex_count;
    d.last_height = summary.last_height;
    for (int x = 0; x < static_cast<int>(cols.size()); ++x)
    {
        Column col{x, {}};
        std::uint64_t m = cols[x];
        while (m)
        {
            const std::uint64_t run = lowest_run(m);
            col.components.emplace_back(bottom(run), top(run));
            m ^= run;
        }
        d.columns.push_back(std::move(col));
    }
    if (c.has(Label::simplex_duplex))
    {
        d.lower_pivot = columns::lower_pivot(cols);
        d.upper_pivot = columns::upper_pivot(cols);
        d.lower_inner_pivot = columns::lower_inner_pivot(cols);
        d.upper_inner_pivot = columns::upper_inner_pivot(cols);
    }
    return c;
}

// ---------------------------------------------------------------------------
// CountTable

CountTable::CountTable(int n_max) : n_max_(n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("CountTable: negative n_max");
    const auto side = static_cast<std::size_t>(n_max) + 1;
    counts_.assign(side * side * side * kLabelCount, 0);
}

std::size_t CountTable::index(int n, int k, int h, Label l) const
{
    const auto side = static_cast<std::size_t>(n_max_) + 1;
    return ((static_cast<std::size_t>(n) * side + k) * side + h) * kLabelCount + static_cast<std::size_t>(l);
}

std::uint64_t CountTable::count(int n, int k, int h, Label l) const
{
    if (n < 0 || k < 0 || h < 0 || n > n_max_ || k > n_max_ || h > n_max_)
        return 0;
    return counts_[index(n, k, h, l)];
}

std::uint64_t CountTable::count(int n, int k, Label l) const
{
    std::uint64_t total = 0;
    for (int h = 0; h <= n_max_; ++h)
        total += count(n, k, h, l);
    return total;
}

std::uint64_t CountTable::count(int n, Label l) const
{
    std::uint64_t total = 0;
    for (int k = 0; k <= n_max_; ++k)
        total += count(n, k, l);
    return total;
}

void CountTable::add(int n, int k, int h, std::uint32_t labels)
{
    for (int l = 0; l < kLabelCount; ++l)
        if ((labels >> l) & 1u)
            ++counts_[index(n, k, h, static_cast<Label>(l))];
}

void CountTable::note_part_matches(int matches)
{
    if (matches == 0)
        ++unclassified_;
    else if (matches > 1)
        ++multiply_classified_;
}

CountTable &CountTable::operator+=(const CountTable &o)
{
    if (o.n_max_ != n_max_)
        throw std::invalid_argument("CountTable: merging tables of different size");
    for (std::size_t i = 0; i < counts_.size(); ++i)
        counts_[i] += o.counts_[i];
    unclassified_ += o.unclassified_;
    multiply_classified_ += o.multiply_classified_;
    return *this;
}

int ceiling()
{
    if (const char *env = std::getenv("SDPOLY_ORACLE_CEILING"))
    {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 60)
            return static_cast<int>(v);
    }
    return 14;
}

// ---------------------------------------------------------------------------
// Enumeration (Redelmeier's algorithm over the half-plane y > 0 or y = 0, x >= 0)

namespace
{

struct Task
{
    std::vector<Cell> cells;
    std::vector<int> untried;
    std::vector<std::uint8_t> seen;
};

class Enumerator
{
public:
    using Visit = std::function<void(const std::vector<Cell> &)>;

    explicit Enumerator(int n_max) : n_max_(n_max), width_(2 * n_max + 3), table_(n_max)
    {
        seen_.assign(static_cast<std::size_t>(width_) * (n_max + 2), 0);
        masks_.assign(static_cast<std::size_t>(width_), 0);
    }

    CountTable &table() { return table_; }
    void set_visitor(Visit v) { visit_ = std::move(v); }
    void set_split(int depth, std::vector<Task> *sink)
    {
        split_depth_ = depth;
        sink_ = sink;
    }
    void set_audit(std::unordered_set<std::string> *audit) { audit_ = audit; }

    void run_from_origin()
    {
        const int origin = encode({0, 0});
        seen_[origin] = 1;
        rec({origin});
    }

    // Leaves the enumerator ready for another task; counts accumulate.
    void run_task(const Task &t)
    {
        seen_ = t.seen;
        for (const Cell &c : t.cells)
            push(c);
        rec(t.untried);
        while (!cells_.empty())
            pop();
    }

private:
    int encode(Cell c) const { return c.y * width_ + (c.x + n_max_ + 1); }
    Cell decode(int i) const { return {i % width_ - (n_max_ + 1), i / width_}; }

    void push(Cell c)
    {
        cells_.push_back(c);
        masks_[c.x + n_max_ + 1] |= std::uint64_t{1} << c.y;
    }
    void pop()
    {
        const Cell c = cells_.back();
        masks_[c.x + n_max_ + 1] &= ~(std::uint64_t{1} << c.y);
        cells_.pop_back();
    }

    void emit()
    {
        int lo = 0;
        while (masks_[lo] == 0)
            ++lo;
        int hi = static_cast<int>(masks_.size()) - 1;
        while (masks_[hi] == 0)
            --hi;
        const std::span<const std::uint64_t> cols(masks_.data() + lo, static_cast<std::size_t>(hi - lo + 1));
        const auto s = columns::classify(cols);
        table_.add(static_cast<int>(cells_.size()), s.duplex_count, s.last_height, s.labels);
        if (s.labels & bit(Label::s))
            table_.note_part_matches(s.part_matches);
        if (visit_)
            visit_(cells_);
        if (audit_)
        {
            std::vector<Cell> norm = cells_;
            int mx = norm[0].x;
            for (const Cell &c : norm)
                mx = std::min(mx, c.x);
            for (Cell &c : norm)
                c.x -= mx;
            std::sort(norm.begin(), norm.end());
            std::string key;
            for (const Cell &c : norm)
            {
                key.push_back(static_cast<char>(c.x));
                key.push_back(static_cast<char>(c.y));
            }
            if (!audit_->insert(std::move(key)).second)
                throw InternalError("enumerate: polyomino generated twice");
        }
    }

    void rec(std::vector<int> untried)
    {
        while (!untried.empty())
        {
            const int idx = untried.back();
            untried.pop_back();
            const Cell c = decode(idx);
            push(c);
            emit();
            if (static_cast<int>(cells_.size()) < n_max_)
            {
                std::vector<int> next = untried;
                const std::size_t first_new = next.size();
                for (Cell nb : {Cell{c.x + 1, c.y}, Cell{c.x - 1, c.y}, Cell{c.x, c.y + 1}, Cell{c.x, c.y - 1}})
                {
                    if (nb.y < 0 || (nb.y == 0 && nb.x < 0))
                        continue;
                    const int ni = encode(nb);
                    if (seen_[ni])
                        continue;
                    seen_[ni] = 1;
                    next.push_back(ni);
                }
                if (sink_ && static_cast<int>(cells_.size()) == split_depth_)
                    sink_->push_back(Task{cells_, next, seen_});
                else
                    rec(next);
                for (std::size_t i = first_new; i < next.size(); ++i)
                    seen_[next[i]] = 0;
            }
            pop();
        }
    }

    int n_max_;
    int width_;
    CountTable table_;
    std::vector<std::uint8_t> seen_;
    std::vector<std::uint64_t> masks_;
    std::vector<Cell> cells_;
    Visit visit_;
    int split_depth_ = 0;
    std::vector<Task> *sink_ = nullptr;
    std::unordered_set<std::string> *audit_ = nullptr;
};

void check_n_max(int n_max)
{
    if (n_max < 1)
        throw std::invalid_argument("enumerate: n_max must be >= 1");
    if (n_max > ceiling())
        throw ResourceError("enumerate: n_max " + std::to_string(n_max) + " exceeds the safety ceiling " +
                            std::to_string(ceiling()) + " (set SDPOLY_ORACLE_CEILING to raise it)");
}

} // namespace

CountTable enumerate(int n_max, const EnumerateOptions &opts)
{
    check_n_max(n_max);
    std::unordered_set<std::string> audit;
    const int split = std::min(n_max - 1, 6);
    if (!opts.parallel || split < 2)
    {
        Enumerator e(n_max);
        if (opts.uniqueness_audit)
            e.set_audit(&audit);
        e.run_from_origin();
        return std::move(e.table());
    }

    // Serial prefix down to `split` cells, then independent subtrees.
    std::vector<Task> tasks;
    Enumerator root(n_max);
    if (opts.uniqueness_audit)
        root.set_audit(&audit);
    root.set_split(split, &tasks);
    root.run_from_origin();
    CountTable total = std::move(root.table());

    // One enumerator per thread. Counts are integers, so the merged table
    // does not depend on which thread ran which task.
    const auto n_tasks = static_cast<long long>(tasks.size());
    std::vector<std::optional<Enumerator>> workers(static_cast<std::size_t>(omp_get_max_threads()));
    std::vector<std::unordered_set<std::string>> audits(workers.size());
#pragma omp parallel
    {
        auto &e = workers[static_cast<std::size_t>(omp_get_thread_num())].emplace(n_max);
        if (opts.uniqueness_audit)
            e.set_audit(&audits[static_cast<std::size_t>(omp_get_thread_num())]);
#pragma omp for schedule(dynamic, 1)
        for (long long i = 0; i < n_tasks; ++i)
            e.run_task(tasks[static_cast<std::size_t>(i)]);
    }
    for (auto &e : workers)
        if (e)
            total += e->table();
    for (auto &a : audits)
        for (auto &key : a)
            if (!audit.insert(key).second)
                throw InternalError("enumerate: polyomino generated twice");
    return total;
}

void for_each_polyomino(int n_max, const std::function<void(const Polyomino &, const Classification &)> &visit)
{
    check_n_max(n_max);
    Enumerator e(n_max);
    e.set_visitor([&](const std::vector<Cell> &cells) {
        const Polyomino p = Polyomino::from_cells(cells);
        visit(p, classify(p));
    });
    e.run_from_origin();
}

std::string dump_line(const Polyomino &p, const Classification &c)
{
    std::ostringstream os;
    bool first = true;
    for (const Cell &cell : p.cells())
    {
        os << (first ? "" : " ") << '(' << cell.x << ',' << cell.y << ')';
        first = false;
    }
    os << " |";
    for (int l = 0; l < kLabelCount; ++l)
        if (c.has(static_cast<Label>(l)))
            os << ' ' << kLabelNames[l];
    os << " k=" << c.decomposition.duplex_count << " h=" << c.decomposition.last_height;
    return os.str();
}

QSeries refined_series(const CountTable &table, Label l, int order, const WPoly &w)
{
    if (order > table.n_max())
        throw std::invalid_argument("refined_series: order exceeds the enumerated range");
    QSeries s(order);
    for (int n = 0; n <= order; ++n)
    {
        WPoly c;
        for (int k = 0; k <= n; ++k)
            if (auto v = table.count(n, k, l))
                c += w.pow(static_cast<unsigned>(k)) * Rational(static_cast<unsigned long>(v));
        s.set(n, c);
    }
    return s;
}

QTSeries refined_series_qt(const CountTable &table, Label l, int order, const WPoly &w)
{
    if (order > table.n_max())
        throw std::invalid_argument("refined_series_qt: order exceeds the enumerated range");
    QTSeries s(order);
    for (int n = 0; n <= order; ++n)
        for (int h = 0; h <= n; ++h)
        {
            WPoly c;
            for (int k = 0; k <= n; ++k)
                if (auto v = table.count(n, k, h, l))
                    c += w.pow(static_cast<unsigned>(k)) * Rational(static_cast<unsigned long>(v));
            s.set(n, h, c);
        }
    return s;
}

} // namespace sdpoly::oracle
