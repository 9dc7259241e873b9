#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "regspec/rng.hpp"

namespace regspec {

/// Adjacency matrix of a d-regular digraph on n vertices: a 0/1 matrix whose
/// row sums and column sums all equal d. Loops (diagonal ones) are allowed,
/// multiple edges are not. Many graph generators default to loop-free graphs;
/// this type does not.
///
/// Values are immutable after construction; every constructor validates the
/// invariants.
class RegularDigraph {
public:
    /// Builds from per-row column lists (any order, 0-based).
    static RegularDigraph from_rows(int n, int d, const std::vector<std::vector<int>>& rows);
    /// Builds from a row-major n*n 0/1 array.
    static RegularDigraph from_adjacency(int n, int d, std::vector<std::uint8_t> adjacency);
    /// Row i has support {i, i+1, ..., i+d-1} mod n.
    static RegularDigraph circulant(int n, int d);
    /// Row i has the single entry perm[i].
    static RegularDigraph permutation(const std::vector<int>& perm);

    int n() const { return n_; }
    int d() const { return d_; }
    bool has_edge(int row, int col) const {
        return adjacency_[static_cast<std::size_t>(row) * n_ + col] != 0;
    }
    /// Sorted column indices of row i.
    std::span<const int> row_support(int row) const {
        return {supports_.data() + static_cast<std::size_t>(row) * d_, static_cast<std::size_t>(d_)};
    }
    const std::vector<std::uint8_t>& adjacency() const { return adjacency_; }

    /// Row-major lexicographic order on the 0/1 entries (for equal n).
    friend std::strong_ordering operator<=>(const RegularDigraph& a, const RegularDigraph& b);
    friend bool operator==(const RegularDigraph& a, const RegularDigraph& b) {
        return a.n_ == b.n_ && a.d_ == b.d_ && a.adjacency_ == b.adjacency_;
    }

private:
    RegularDigraph(int n, int d, std::vector<std::uint8_t> adjacency);

    int n_ = 0;
    int d_ = 0;
    std::vector<std::uint8_t> adjacency_;
    std::vector<int> supports_;
};

/// Simple switching: (row1, col1), (row2, col2) are edges and (row1, col2),
/// (row2, col1) are not; the move swaps the two pairs.
struct SwitchMove {
    int row1 = 0;
    int row2 = 0;
    int col1 = 0;
    int col2 = 0;

    SwitchMove inverse() const { return {row1, row2, col2, col1}; }
};

bool is_admissible(const RegularDigraph& m, const SwitchMove& move);

/// Throws PreconditionError if the move is not admissible.
RegularDigraph apply_switch(const RegularDigraph& m, const SwitchMove& move);

/// Exact uniform sample from the set of d-regular digraphs by the
/// configuration model: n*d out-stubs are matched with a uniformly shuffled
/// list of n*d in-stubs, and pairings that put two stubs in the same cell are
/// rejected. Throws BudgetExhausted after max_attempts rejections. The
/// acceptance probability decays like exp(-(d-1)^2/2), so this is practical
/// only for small d.
RegularDigraph sample_configuration(int n, int d, Rng& rng, int max_attempts);
RegularDigraph sample_configuration(int n, int d, std::uint64_t seed, int max_attempts);

struct SwitchChainResult {
    RegularDigraph graph;
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;
};

/// Switch chain on the set of d-regular digraphs. Each step picks two edges
/// independently and uniformly among the n*d edges and performs the switch
/// they define when it is admissible, otherwise stays put. The proposal is
/// symmetric and every state has the same number of candidates, so the
/// stationary law is uniform. Approximate: mixing time is not controlled.
RegularDigraph sample_switch_chain(const RegularDigraph& start, std::uint64_t steps, std::uint64_t seed);
SwitchChainResult run_switch_chain(const RegularDigraph& start, std::uint64_t steps, Rng& rng);

enum class SamplerKind { Automatic, Rejection, SwitchChain };

struct SamplerOptions {
    SamplerKind kind = SamplerKind::Automatic;
    int max_attempts = 100000;
    /// Burn-in for the switch chain, in proposals per (n*d). A fixed proposal
    /// count keeps the output law a power of the chain kernel; stopping after a
    /// fixed number of accepted moves would weight states by their acceptance rate.
    double burn_in_factor = 20.0;
};

struct SampledDigraph {
    RegularDigraph graph;
    bool exact = true;  ///< false when produced by the switch chain
};

/// Default entry point. Automatic uses rejection sampling when d <= 4 or
/// d == n and otherwise the switch chain started from the circulant with
/// burn_in_factor * n * d proposals.
SampledDigraph sample_regular(int n, int d, Rng& rng, const SamplerOptions& options = {});

/// Calls `visit` on every element of the set, in row-major lexicographic
/// order. Guard: n <= 7.
void for_each_regular(int n, int d, const std::function<void(const RegularDigraph&)>& visit);
std::vector<RegularDigraph> enumerate_all(int n, int d);

/// All d-regular M' that agree with M on every row outside `rows`, in
/// row-major lexicographic order. Guard: at most 16 columns may be touched by
/// the free rows and at most max_results matrices are produced.
std::vector<RegularDigraph> enumerate_restricted(const RegularDigraph& m, const std::vector<int>& rows,
                                                 std::size_t max_results = 2'000'000);

/// Text format: header "n d", then n lines of d sorted 0-based column indices.
std::string to_text(const RegularDigraph& m);
RegularDigraph from_text(const std::string& text);

}  // namespace regspec
