#pragma once

#include <span>
#include <string>
#include <vector>

#include "regspec/dense_matrix.hpp"
#include "regspec/regular_digraph.hpp"

namespace regspec {

/// B = scale * A - z * Id.
struct ShiftSpec {
    Complex z{0.0, 0.0};
    double scale = 1.0;

    /// scale = d^{-1/2}, the normalization under which the spectrum fills the unit disk.
    static ShiftSpec rescaled(Complex z, int d);
};

ComplexMatrix build_shifted(const RegularDigraph& a, const ShiftSpec& spec);

/// Uniformly weighted atoms, weight 1/n each. Singular-value distributions
/// store their (real, nonnegative) atoms on the real axis.
struct EmpiricalMeasure {
    std::vector<Complex> atoms;

    std::size_t size() const { return atoms.size(); }
    double weight() const { return atoms.empty() ? 0.0 : 1.0 / static_cast<double>(atoms.size()); }
};

EmpiricalMeasure esd(std::span<const Complex> eigenvalues);
EmpiricalMeasure sv_distribution(std::span<const double> singular_values);

constexpr double kDefaultLogFloor = 1e-30;

struct LogPotential {
    double value = 0.0;
    int floored_count = 0;  ///< singular values replaced by the floor
};

/// -(1/n) sum ln max(s_i, floor). Requires nonincreasing svals and floor > 0.
LogPotential log_potential_empirical(std::span<const double> svals, double floor = kDefaultLogFloor);

/// Log potential of the uniform law on the unit disk:
/// (1 - |z|^2) / 2 inside, -ln|z| outside.
double log_potential_circular(Complex z);

/// (1/pi) d^2 (d-1) / (d^2 - |z|^2)^2 on |z| < sqrt(d), 0 elsewhere. d >= 2.
double km_density(Complex z, int d);

/// Reference law for the spectrum of d^{-1/2} A_n, in rescaled coordinates
/// (so both laws live on the closed unit disk).
class ReferenceLaw {
public:
    enum class Kind { Circular, KestenMcKay };

    static ReferenceLaw circular() { return ReferenceLaw(Kind::Circular, 0); }
    static ReferenceLaw kesten_mckay(int d);

    Kind kind() const { return kind_; }
    int d() const { return d_; }

    /// Density at a point w of the rescaled plane.
    double density(Complex w) const;
    /// P{|w| <= r}.
    double radial_cdf(double r) const;
    std::string name() const;

private:
    ReferenceLaw(Kind kind, int d) : kind_(kind), d_(d) {}
    Kind kind_;
    int d_;
};

/// sup_r |F_hat(r) - F_law(r)| with F_hat the empirical CDF of |atom|.
/// Exact: the supremum is attained at a jump of F_hat.
double radial_cdf_distance(const EmpiricalMeasure& mu, const ReferenceLaw& law);

/// Kolmogorov distance between the empirical law of arg(atom) in [0, 2pi)
/// and the uniform law.
double angular_ks_distance(const EmpiricalMeasure& mu);

struct RegimeBoundaries {
    /// Integer cut points; index i (1-based) belongs to I1 if i <= b1,
    /// I2 if b1 < i <= b2, I3 if b2 < i <= b3, I4 otherwise.
    long long b1 = 0;  ///< floor(n - C n d^{-1/48})
    long long b2 = 0;  ///< floor(n - 2n / d^{3/2})
    long long b3 = 0;  ///< floor(n - n / ln^2 n)
};

RegimeBoundaries regime_boundaries(int n, int d, double C = 1.0);

/// Sum of |ln s_i| over the indices with |ln s_i| >= T, split into the large
/// values (s_i >= e^T) and four index regimes for the small values
/// (s_i <= e^{-T}). The regimes are
///   I1 = {i <= b1}, I2 = {i <= b2} \ I1, I3 = {i <= b3} \ (I1 u I2),
///   I4 = the rest,
/// so they partition the small-value set even when the cut points are not
/// increasing (small n or d). Empty regimes contribute 0.
struct TailReport {
    double T = 0.0;
    RegimeBoundaries bounds;
    double tail_sum = 0.0;
    double large_sum = 0.0;
    double regime_sum[4] = {0.0, 0.0, 0.0, 0.0};
    std::vector<int> regime_indices[4];  ///< 1-based indices of the small values
    std::vector<int> large_indices;
};

TailReport tail_log_sum(std::span<const double> svals, double T, int d, double C = 1.0);

struct BoundKnobs {
    double C = 1.0;
    double c = 0.1;
};

struct BoundCheck {
    bool applicable = false;  ///< hypotheses on (n, d, z) met and index range nonempty
    bool pass = true;         ///< vacuously true when the index range is empty
    bool resolved = true;     ///< false when a value is below the numerical floor
    long long k_lo = 0;       ///< checked index range, 1-based, inclusive
    long long k_hi = -1;
    long long tightest_k = 0;
    double margin = 0.0;      ///< min over the range of ln(s_k) - ln(bound_k)
};

struct SvBoundReport {
    BoundCheck smin;       ///< s_n(A - w Id) >= n^{-6}, w = sqrt(d) z, needs |w| <= d/6
    BoundCheck cook_anti;  ///< s_k(B_z) >= c (n-k)/n for k <= n - C n d^{-1/48}
    BoundCheck inter_sv;   ///< s_k(A - w Id) >= exp(-C (n/(n-k))^{1/144}) for n - 2n d^{-3/2} <= k <= n - 3n/ln^144 n
};

/// `svals` are the singular values of B_z = d^{-1/2} A - z Id (nonincreasing);
/// the unshifted-scale bounds use s(A - sqrt(d) z Id) = sqrt(d) s(B_z).
/// `floor` is the numerical resolution of svals (see singular_value_floor);
/// the smallest-value bound is certified only when s_n - floor clears it.
SvBoundReport sv_bound_check(std::span<const double> svals, int d, Complex z, const BoundKnobs& knobs = {},
                             double floor = 0.0);

}  // namespace regspec
