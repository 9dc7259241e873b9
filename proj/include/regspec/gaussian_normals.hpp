#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regspec/dense_matrix.hpp"
#include "regspec/projection.hpp"
#include "regspec/rng.hpp"

namespace regspec {

/// n i.i.d. standard complex Gaussians (real and imaginary parts N(0, 1/2)).
ComplexVector sample_gaussian(int n, Rng& rng);
ComplexVector sample_gaussian(int n, std::uint64_t seed);

/// Y = P_{E^perp} G.
ComplexVector random_normal(const OrthonormalBasis& e, std::span<const Complex> g);

/// Moduli in nonincreasing order.
std::vector<double> order_statistics(std::span<const Complex> x);

/// sigma = ||P_{E^perp}(e_i - e_j)||_2, the exact standard deviation of
/// Y_i - Y_j. Indices are 0-based and must differ.
double pair_sigma(const OrthonormalBasis& e, int i, int j);

/// (alpha, beta)-strong correlation: P{|Y_i - Y_j| >= alpha} = exp(-alpha^2/sigma^2) <= beta.
bool strongly_correlated(double sigma, double alpha, double beta);

struct CorrelationClusters {
    std::vector<std::vector<int>> clusters;  ///< sorted index sets, nonincreasing sizes
    std::vector<int> anchors;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Greedy construction: among the remaining indices pick the anchor u whose
/// correlated set C(u) = {v remaining : (u, v) strongly correlated} is
/// largest (smallest u on ties), take U = C(u), remove it, repeat until no
/// index remains. `active` restricts the starting index set (default: all).
CorrelationClusters build_clusters(const OrthonormalBasis& e, double alpha, double beta,
                                   std::optional<std::vector<bool>> active = std::nullopt);

/// Cell of the nine-layer partition of the plane: layer in 1..9 and lattice
/// index j, with ball centre rho * (a_layer + 3 j). Layer 0 means uncovered.
struct PlaneCell {
    int layer = 0;
    long long jx = 0;
    long long jy = 0;

    Complex center(double rho) const;
    friend bool operator==(const PlaneCell&, const PlaneCell&) = default;
};

/// Offsets a_1..a_9 in layer order.
extern const int kPartitionOffsets[9][2];

/// The first layer whose open radius-rho ball around its nearest lattice
/// centre contains w. The nine shifted lattices together form rho * Z^2, so
/// every point is within rho / sqrt(2) of some centre and layer 0 is never
/// returned for finite input; it is kept as an explicit value for callers.
PlaneCell plane_partition_cell(Complex w, double rho);

struct LevelProfile {
    double rho = 0.0;
    Complex best_center{0.0, 0.0};
    int count = 0;         ///< max over candidate centres x_i of |{k : |x_k - x_i| <= rho}|
    int count_double = 0;  ///< same with radius 2 rho
    /// count <= max_lambda |{k : |x_k - lambda| <= rho}| <= count_double.
};

/// Candidate-centre level counting. Entries with exclude[k] set are neither
/// counted nor used as centres.
LevelProfile level_count(std::span<const Complex> x, double rho, const std::vector<bool>& exclude = {});

enum class StructureKind { VerySteep, SlopingManyLevels, Neither };
std::string to_string(StructureKind kind);

struct StructureLabel {
    StructureKind kind = StructureKind::Neither;
    int steep_index = 0;          ///< 1-based i with x*_i > 0.9 (n/i)^3 x*_k (VerySteep)
    double decay_margin = 0.0;    ///< min_{i<=k} (0.9 (n/i)^3 x*_k - x*_i), >= 0 when not steep
    double level_radius = 0.0;
    double level_limit = 0.0;     ///< (Ic/n)^{gamma/2} n
    int level_count = 0;          ///< radius-rho lower bound
    int level_count_double = 0;   ///< radius-2rho upper bound
    bool undecided_level = false; ///< count <= limit < count_double
};

constexpr double kDefaultGamma = 1.0 / 288.0;

/// Steep/sloping dichotomy with k = floor(a * Ic_size) and reference x*_k.
/// Requires 1 <= k <= n and x != 0.
StructureLabel classify_normal(std::span<const Complex> x, int ic_size, double a = 0.5,
                               double gamma = kDefaultGamma);

/// One Monte Carlo estimate compared with a ceiling.
struct ExperimentRecord {
    std::string lemma_id;
    std::map<std::string, double> params;
    double empirical_freq = 0.0;
    double bound_value = 0.0;
    long long n_trials = 0;
    double std_error = 0.0;  ///< binomial standard error of empirical_freq
};

std::string to_json(const ExperimentRecord& record);

struct OrderStatGrid {
    std::vector<double> small_c = {0.05, 0.1, 0.2};
    std::vector<double> large_C = {1.0, 1.5, 2.0};
    std::vector<int> large_i = {1, 2, 5};
};

/// For each small-ball constant c: frequency of Y*_{ceil(cm)} <= cm/n against
/// exp(-cm). For each (C, i) with i <= n/2: frequency of
/// Y*_i >= C sqrt(ln(n/i)) against (i/n)^i. m = n - rank(E). Trials use
/// streams derive_seed(seed, t).
std::vector<ExperimentRecord> orderstat_experiments(const OrthonormalBasis& e, int trials, std::uint64_t seed,
                                                    const OrderStatGrid& grid = {});

}  // namespace regspec
