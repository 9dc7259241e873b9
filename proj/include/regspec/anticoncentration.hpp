#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regspec/dense_matrix.hpp"
#include "regspec/regular_digraph.hpp"
#include "regspec/rng.hpp"

namespace regspec {

/// floor(n^{1/4}) computed in integers.
int quarter_root(int n);

/// Uniform floor(n^{1/4})-subset of J (sorted), drawn without replacement.
std::vector<int> sample_I(const std::vector<int>& J, int n, Rng& rng);
std::vector<int> sample_I(const std::vector<int>& J, int n, std::uint64_t seed);

/// Sorted union of the row supports of M over `rows`.
std::vector<int> support_union(const RegularDigraph& m, const std::vector<int>& rows);

bool supports_pairwise_disjoint(const RegularDigraph& m, const std::vector<int>& rows);

struct FrequencyEstimate {
    double frequency = 0.0;
    long long trials = 0;
    double std_error = 0.0;
};

FrequencyEstimate make_frequency(long long hits, long long trials);

/// Frequency over `trials` draws of I (streams derive_seed(seed, t)) that the
/// rows I u {u} have pairwise disjoint supports.
FrequencyEstimate disjointness_frequency(const RegularDigraph& m, const std::vector<int>& J, int u, int trials,
                                         std::uint64_t seed);

/// Conditional row resampling: given I0, the law of R_u(M') for M' uniform
/// among the matrices that agree with M outside the rows I0 u {u}.
struct ResamplerSpec {
    RegularDigraph m;
    std::vector<int> J;           ///< |J| >= n/2, u not in J
    int u = 0;
    /// Fixed subset of J, or nullopt to draw a floor(n^{1/4})-subset per sample.
    /// A fixed I0 may have any size; the empty set pins row u.
    std::optional<std::vector<int>> I0;

    void validate() const;
};

struct XOptions {
    /// Largest restricted family enumerated for exact sampling; larger
    /// families fall back to the restricted switch chain.
    std::size_t exact_limit = 200000;
    /// Chain length in proposals per (|I0 u {u}| * d).
    double chain_factor = 50.0;
};

struct XDraw {
    std::vector<int> support;  ///< sorted support of the sampled row
    std::vector<int> I0;
    bool exact = true;  ///< false when produced by the approximate chain
};

/// Exact law of the resampled row for one I0: distinct supports with the
/// number of matrices realizing each.
struct XLaw {
    std::vector<std::vector<int>> supports;  ///< lexicographic order
    std::vector<long long> counts;
    long long total = 0;
};

class XSampler {
public:
    explicit XSampler(ResamplerSpec spec, XOptions options = {});

    XDraw sample(Rng& rng);
    /// nullopt when the restricted family exceeds the enumeration guards.
    const std::optional<XLaw>& exact_law(const std::vector<int>& I0);

    const ResamplerSpec& spec() const { return spec_; }

private:
    std::vector<int> chain_sample(const std::vector<int>& rows, Rng& rng) const;

    ResamplerSpec spec_;
    XOptions options_;
    std::map<std::vector<int>, std::optional<XLaw>> cache_;
};

XDraw sample_X(const ResamplerSpec& spec, std::uint64_t seed, const XOptions& options = {});

struct SupportCheck {
    bool hypothesis_disjoint = false;
    std::vector<int> S;
    std::map<std::vector<int>, long long> counts;  ///< d-subset of S -> number of matrices
    long long total = 0;
    long long expected_subsets = 0;  ///< binomial(|S|, d)
    bool equinumerous = false;       ///< every d-subset of S realized, all counts equal
};

/// Exact counting over the restricted family (enumerate_restricted guards apply).
SupportCheck uniform_support_check(const RegularDigraph& m, const std::vector<int>& I0, int u);

struct CouplingDraw {
    std::vector<int> xi;  ///< d i.i.d. uniform elements of S
    bool distinct = true;

    /// Sorted support of Y = sum e_{xi_i} (duplicates merged).
    std::vector<int> support() const;
};

CouplingDraw coupling_sampler(const std::vector<int>& S, int d, Rng& rng);

enum class HypothesisStatus { Certified, Violated, Undecided };
std::string to_string(HypothesisStatus status);

struct SmallBallParams {
    double rho = 1.0;
    Complex lambda{0.0, 0.0};
    double delta = 0.0;
    std::vector<int> J_tilde;  ///< indices excluded from the level hypothesis
    int trials = 1000;
    std::uint64_t seed = 0;
};

struct SmallBallResult {
    FrequencyEstimate estimate;
    double ceiling = 0.0;  ///< (8|J~|/n)^d + 144 delta + n^{-1/10}
    HypothesisStatus hypothesis = HypothesisStatus::Undecided;
    int level_count = 0;         ///< lower bound on the worst rho-level outside J~
    int level_count_double = 0;  ///< upper bound
    long long exact_draws = 0;
    long long approximate_draws = 0;
};

/// Frequency of |<y, X> - lambda| <= rho/4 with <y, X> = sum_j y_j X_j, I0
/// redrawn every trial. The level hypothesis
///   for all lambda': |{j not in J~ : |y_j - lambda'| <= rho}| <= delta n
/// is certified or refuted by candidate-centre level counting.
SmallBallResult smallball_experiment(std::span<const Complex> y, const ResamplerSpec& spec,
                                     const SmallBallParams& params, const XOptions& options = {});

struct DistanceRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    int i = 0;    ///< 1-based position in the permuted order
    int row = 0;  ///< sigma(i), 0-based row of B_z
    double distance = 0.0;
    double threshold = 0.0;  ///< exp(-C (n/(n-i))^gamma)
    bool violated = false;   ///< distance < threshold
    bool in_regime = false;  ///< n - n/d^3 <= i <= n - 2n/ln^{1/gamma} n
    int n = 0;
    int d = 0;
    double gamma = 0.0;
    double C = 0.0;
    bool exact_sample = true;
};

/// Per trial: sample A_n (stream derive_seed(master_seed, t)), a uniform
/// permutation sigma, and record the distance from row sigma(i) of
/// B_z = d^{-1/2} A_n - z Id to the span of rows sigma(1..i-1).
std::vector<DistanceRecord> row_distance_experiment(int n, int d, Complex z, int i, int trials,
                                                    std::uint64_t master_seed, double C = 1.0,
                                                    double gamma = 1.0 / 288.0);

struct SvFromDistancesVerdict {
    int m = 0;
    long long t = 0;            ///< floor((1 - 2 L delta) m); 0 means vacuous
    int violations = 0;         ///< rows among the first m with leave-one-out distance < rho
    double allowed = 0.0;       ///< L delta m
    bool hypothesis = false;    ///< violations <= L delta m
    double bound = 0.0;         ///< rho sqrt(L delta)
    double s_t = 0.0;
    bool implication_holds = true;
};

/// Relative slack used when comparing s_t with the bound.
constexpr double kImplicationSlack = 1e-9;

/// Deterministic implication behind the second-moment route: if at most
/// L delta m of the first m rows lie within rho of the span of the other
/// first-m rows, then s_t(B) >= rho sqrt(L delta). `distances` are those
/// leave-one-out distances, `svals` the singular values of B (nonincreasing).
/// Requires rho > 0, delta > 0, 1 <= L <= 1/(2 delta).
SvFromDistancesVerdict sv_from_distances(double rho, double delta, double L, int m, std::span<const double> svals,
                                         std::span<const double> distances);
/// Same, computing the distances of the first m rows and the singular values of b.
SvFromDistancesVerdict sv_from_distances(double rho, double delta, double L, int m, const ComplexMatrix& b);

/// One JSON-lines record: {experiment_id, params, seed, outcome, derived_quantities}.
struct TrialRecord {
    std::string experiment_id;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
    std::map<std::string, double> outcome;
    std::map<std::string, double> derived_quantities;
};

std::string to_json_line(const TrialRecord& record);
TrialRecord to_trial_record(const DistanceRecord& record);

}  // namespace regspec
