#include "regspec/regular_digraph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "regspec/errors.hpp"

namespace regspec {

namespace {

constexpr int kEnumerationMaxN = 7;
constexpr int kRestrictedMaxColumns = 16;

void check_dimensions(int n, int d) {
    require(n >= 1, "n must be positive");
    require(d >= 1 && d <= n, "degree must satisfy 1 <= d <= n");
}

}  // namespace

RegularDigraph::RegularDigraph(int n, int d, std::vector<std::uint8_t> adjacency)
    : n_(n), d_(d), adjacency_(std::move(adjacency)) {
    check_dimensions(n, d);
    require(adjacency_.size() == static_cast<std::size_t>(n) * n, "adjacency must have n*n entries");
    supports_.reserve(static_cast<std::size_t>(n) * d);
    std::vector<int> column_sums(n, 0);
    for (int i = 0; i < n; ++i) {
        int row_sum = 0;
        for (int j = 0; j < n; ++j) {
            const std::uint8_t v = adjacency_[static_cast<std::size_t>(i) * n + j];
            require(v <= 1, "entries must be 0 or 1");
            if (v) {
                ++row_sum;
                ++column_sums[j];
                supports_.push_back(j);
            }
        }
        require(row_sum == d, "row " + std::to_string(i) + " does not sum to d");
    }
    for (int j = 0; j < n; ++j) require(column_sums[j] == d, "column " + std::to_string(j) + " does not sum to d");
}

RegularDigraph RegularDigraph::from_adjacency(int n, int d, std::vector<std::uint8_t> adjacency) {
    return RegularDigraph(n, d, std::move(adjacency));
}

RegularDigraph RegularDigraph::from_rows(int n, int d, const std::vector<std::vector<int>>& rows) {
    check_dimensions(n, d);
    require(rows.size() == static_cast<std::size_t>(n), "need one support list per row");
    std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        for (int j : rows[i]) {
            require(j >= 0 && j < n, "column index out of range");
            auto& cell = adjacency[static_cast<std::size_t>(i) * n + j];
            require(cell == 0, "multiple edge in row " + std::to_string(i));
            cell = 1;
        }
    }
    return RegularDigraph(n, d, std::move(adjacency));
}

RegularDigraph RegularDigraph::circulant(int n, int d) {
    check_dimensions(n, d);
    std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) adjacency[static_cast<std::size_t>(i) * n + (i + k) % n] = 1;
    return RegularDigraph(n, d, std::move(adjacency));
}

RegularDigraph RegularDigraph::permutation(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    std::vector<std::vector<int>> rows(n);
    for (int i = 0; i < n; ++i) rows[i] = {perm[i]};
    return from_rows(n, 1, rows);
}

std::strong_ordering operator<=>(const RegularDigraph& a, const RegularDigraph& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.adjacency_.begin(), a.adjacency_.end(), b.adjacency_.begin(),
                                                  b.adjacency_.end());
}

bool is_admissible(const RegularDigraph& m, const SwitchMove& mv) {
    const int n = m.n();
    auto in_range = [n](int v) { return v >= 0 && v < n; };
    if (!in_range(mv.row1) || !in_range(mv.row2) || !in_range(mv.col1) || !in_range(mv.col2)) return false;
    if (mv.row1 == mv.row2 || mv.col1 == mv.col2) return false;
    return m.has_edge(mv.row1, mv.col1) && m.has_edge(mv.row2, mv.col2) && !m.has_edge(mv.row1, mv.col2) &&
           !m.has_edge(mv.row2, mv.col1);
}

RegularDigraph apply_switch(const RegularDigraph& m, const SwitchMove& mv) {
    require(is_admissible(m, mv), "switch move is not admissible");
    auto adjacency = m.adjacency();
    const auto n = static_cast<std::size_t>(m.n());
    adjacency[mv.row1 * n + mv.col1] = 0;
    adjacency[mv.row2 * n + mv.col2] = 0;
    adjacency[mv.row1 * n + mv.col2] = 1;
    adjacency[mv.row2 * n + mv.col1] = 1;
    return RegularDigraph::from_adjacency(m.n(), m.d(), std::move(adjacency));
}

RegularDigraph sample_configuration(int n, int d, Rng& rng, int max_attempts) {
    check_dimensions(n, d);
    require(max_attempts >= 1, "max_attempts must be positive");
    // The set has a single element; every pairing would be rejected with high probability.
    if (d == n) return RegularDigraph::circulant(n, d);
    const std::size_t stubs = static_cast<std::size_t>(n) * d;
    std::vector<int> in_stubs(stubs);
    for (std::size_t k = 0; k < stubs; ++k) in_stubs[k] = static_cast<int>(k / d);
    std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        rng.shuffle(in_stubs);
        std::fill(adjacency.begin(), adjacency.end(), 0);
        bool simple = true;
        for (std::size_t k = 0; k < stubs && simple; ++k) {
            auto& cell = adjacency[(k / d) * n + in_stubs[k]];
            if (cell) simple = false;
            cell = 1;
        }
        if (simple) return RegularDigraph::from_adjacency(n, d, std::move(adjacency));
    }
    throw BudgetExhausted("configuration model rejected " + std::to_string(max_attempts) +
                          " pairings; d is too large for rejection sampling, use the switch chain");
}

RegularDigraph sample_configuration(int n, int d, std::uint64_t seed, int max_attempts) {
    Rng rng(seed);
    return sample_configuration(n, d, rng, max_attempts);
}

namespace {

/// Mutable working copy used by the chain: adjacency plus one slot per edge.
class ChainState {
public:
    explicit ChainState(const RegularDigraph& m) : n_(m.n()), d_(m.d()), adjacency_(m.adjacency()) {
        slots_.reserve(static_cast<std::size_t>(n_) * d_);
        for (int i = 0; i < n_; ++i)
            for (int j : m.row_support(i)) slots_.push_back(j);
    }

    bool step(Rng& rng) {
        const std::uint64_t edges = slots_.size();
        const std::size_t e1 = rng.uniform_below(edges);
        const std::size_t e2 = rng.uniform_below(edges);
        const std::size_t r1 = e1 / d_, r2 = e2 / d_;
        const int c1 = slots_[e1], c2 = slots_[e2];
        if (r1 == r2 || c1 == c2) return false;
        const std::size_t n = n_;
        if (adjacency_[r1 * n + c2] || adjacency_[r2 * n + c1]) return false;
        adjacency_[r1 * n + c1] = 0;
        adjacency_[r2 * n + c2] = 0;
        adjacency_[r1 * n + c2] = 1;
        adjacency_[r2 * n + c1] = 1;
        slots_[e1] = c2;
        slots_[e2] = c1;
        return true;
    }

    RegularDigraph finish() && { return RegularDigraph::from_adjacency(n_, d_, std::move(adjacency_)); }

private:
    int n_;
    int d_;
    std::vector<std::uint8_t> adjacency_;
    std::vector<int> slots_;
};

}  // namespace

SwitchChainResult run_switch_chain(const RegularDigraph& start, std::uint64_t steps, Rng& rng) {
    ChainState state(start);
    std::uint64_t accepted = 0;
    for (std::uint64_t s = 0; s < steps; ++s) accepted += state.step(rng) ? 1 : 0;
    return {std::move(state).finish(), steps, accepted};
}

RegularDigraph sample_switch_chain(const RegularDigraph& start, std::uint64_t steps, std::uint64_t seed) {
    Rng rng(seed);
    return run_switch_chain(start, steps, rng).graph;
}

SampledDigraph sample_regular(int n, int d, Rng& rng, const SamplerOptions& options) {
    check_dimensions(n, d);
    if (d == n) return {RegularDigraph::circulant(n, d), true};
    SamplerKind kind = options.kind;
    if (kind == SamplerKind::Automatic) kind = d <= 4 ? SamplerKind::Rejection : SamplerKind::SwitchChain;
    if (kind == SamplerKind::Rejection) return {sample_configuration(n, d, rng, options.max_attempts), true};
    const auto target = static_cast<std::uint64_t>(options.burn_in_factor * n * d);
    return {run_switch_chain(RegularDigraph::circulant(n, d), target, rng).graph, false};
}

namespace {

/// d-subsets of [n] as bitmasks (bit j = column j), sorted so that the 0/1
/// row vectors increase lexicographically.
std::vector<std::uint32_t> row_patterns(int n, int d, std::uint32_t allowed) {
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        if (std::popcount(mask) == d && (mask & ~allowed) == 0) masks.push_back(mask);
    auto key = [n](std::uint32_t mask) {
        std::uint32_t k = 0;
        for (int j = 0; j < n; ++j)
            if (mask >> j & 1u) k |= 1u << (n - 1 - j);
        return k;
    };
    std::sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) { return key(a) < key(b); });
    return masks;
}

}  // namespace

void for_each_regular(int n, int d, const std::function<void(const RegularDigraph&)>& visit) {
    check_dimensions(n, d);
    if (n > kEnumerationMaxN)
        throw SizeGuardExceeded("enumerate_all is limited to n <= " + std::to_string(kEnumerationMaxN));
    const auto patterns = row_patterns(n, d, (1u << n) - 1);
    std::vector<int> column_sums(n, 0);
    std::vector<std::uint32_t> chosen(n);

    std::function<void(int)> recurse = [&](int row) {
        if (row == n) {
            std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(n) * n, 0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) adjacency[i * n + j] = chosen[i] >> j & 1u;
            visit(RegularDigraph::from_adjacency(n, d, std::move(adjacency)));
            return;
        }
        const int rows_after = n - row - 1;
        for (std::uint32_t mask : patterns) {
            bool feasible = true;
            for (int j = 0; j < n && feasible; ++j) {
                const int sum = column_sums[j] + static_cast<int>(mask >> j & 1u);
                // Every column must still be able to reach d with the remaining rows.
                feasible = sum <= d && d - sum <= rows_after;
            }
            if (!feasible) continue;
            for (int j = 0; j < n; ++j) column_sums[j] += static_cast<int>(mask >> j & 1u);
            chosen[row] = mask;
            recurse(row + 1);
            for (int j = 0; j < n; ++j) column_sums[j] -= static_cast<int>(mask >> j & 1u);
        }
    };
    recurse(0);
}

std::vector<RegularDigraph> enumerate_all(int n, int d) {
    std::vector<RegularDigraph> out;
    for_each_regular(n, d, [&](const RegularDigraph& m) { out.push_back(m); });
    return out;
}

std::vector<RegularDigraph> enumerate_restricted(const RegularDigraph& m, const std::vector<int>& rows,
                                                 std::size_t max_results) {
    const int n = m.n();
    const int d = m.d();
    std::vector<int> free_rows = rows;
    std::sort(free_rows.begin(), free_rows.end());
    free_rows.erase(std::unique(free_rows.begin(), free_rows.end()), free_rows.end());
    for (int r : free_rows) require(r >= 0 && r < n, "row index out of range");
    if (free_rows.empty()) return {m};

    // Column deficits left by the free rows; only these columns can be used.
    std::vector<int> deficit(n, 0);
    for (int r : free_rows)
        for (int j : m.row_support(r)) ++deficit[j];
    std::vector<int> columns;
    for (int j = 0; j < n; ++j)
        if (deficit[j] > 0) columns.push_back(j);
    const int k = static_cast<int>(columns.size());
    if (k > kRestrictedMaxColumns)
        throw SizeGuardExceeded("restricted enumeration touches " + std::to_string(k) + " columns (limit " +
                                std::to_string(kRestrictedMaxColumns) + ")");

    // Patterns over the local column list; local bit t is global column columns[t],
    // and columns is increasing, so local lexicographic order matches global order.
    const auto patterns = row_patterns(k, d, (1u << k) - 1);
    std::vector<int> remaining(k);
    for (int t = 0; t < k; ++t) remaining[t] = deficit[columns[t]];
    std::vector<std::uint32_t> chosen(free_rows.size());
    std::vector<RegularDigraph> out;
    const int free_count = static_cast<int>(free_rows.size());

    std::function<void(int)> recurse = [&](int idx) {
        if (idx == free_count) {
            if (out.size() >= max_results)
                throw SizeGuardExceeded("restricted enumeration exceeded " + std::to_string(max_results) + " results");
            auto adjacency = m.adjacency();
            for (int f = 0; f < free_count; ++f) {
                const std::size_t base = static_cast<std::size_t>(free_rows[f]) * n;
                for (int j = 0; j < n; ++j) adjacency[base + j] = 0;
                for (int t = 0; t < k; ++t)
                    if (chosen[f] >> t & 1u) adjacency[base + columns[t]] = 1;
            }
            out.push_back(RegularDigraph::from_adjacency(n, d, std::move(adjacency)));
            return;
        }
        const int rows_after = free_count - idx - 1;
        for (std::uint32_t mask : patterns) {
            bool feasible = true;
            for (int t = 0; t < k && feasible; ++t) {
                const int left = remaining[t] - static_cast<int>(mask >> t & 1u);
                feasible = left >= 0 && left <= rows_after;
            }
            if (!feasible) continue;
            for (int t = 0; t < k; ++t) remaining[t] -= static_cast<int>(mask >> t & 1u);
            chosen[idx] = mask;
            recurse(idx + 1);
            for (int t = 0; t < k; ++t) remaining[t] += static_cast<int>(mask >> t & 1u);
        }
    };
    recurse(0);
    return out;
}

std::string to_text(const RegularDigraph& m) {
    std::string out = std::to_string(m.n()) + " " + std::to_string(m.d()) + "\n";
    for (int i = 0; i < m.n(); ++i) {
        bool first = true;
        for (int j : m.row_support(i)) {
            if (!first) out += ' ';
            out += std::to_string(j);
            first = false;
        }
        out += '\n';
    }
    return out;
}

RegularDigraph from_text(const std::string& text) {
    std::istringstream in(text);
    int n = 0, d = 0;
    if (!(in >> n >> d)) throw ParseError("matrix text: missing 'n d' header");
    if (n < 1 || d < 1 || d > n) throw ParseError("matrix text: invalid header");
    std::vector<std::vector<int>> rows(n, std::vector<int>(d));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < d; ++k) {
            if (!(in >> rows[i][k])) throw ParseError("matrix text: row " + std::to_string(i) + " is short");
            if (k > 0 && rows[i][k] <= rows[i][k - 1])
                throw ParseError("matrix text: row " + std::to_string(i) + " is not strictly increasing");
        }
    }
    std::string extra;
    if (in >> extra) throw ParseError("matrix text: trailing data");
    try {
        return RegularDigraph::from_rows(n, d, rows);
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("matrix text: ") + e.what());
    }
}

}  // namespace regspec
