#include "regspec/hermitization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "regspec/errors.hpp"

namespace regspec {

ShiftSpec ShiftSpec::rescaled(Complex z, int d) {
    require(d >= 1, "degree must be positive");
    return {z, 1.0 / std::sqrt(static_cast<double>(d))};
}

ComplexMatrix build_shifted(const RegularDigraph& a, const ShiftSpec& spec) {
    require(spec.scale > 0.0, "shift scale must be positive");
    const int n = a.n();
    ComplexMatrix b(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j : a.row_support(i)) b(i, j) = spec.scale;
        b(i, i) -= spec.z;
    }
    return b;
}

EmpiricalMeasure esd(std::span<const Complex> eigenvalues) {
    return {std::vector<Complex>(eigenvalues.begin(), eigenvalues.end())};
}

EmpiricalMeasure sv_distribution(std::span<const double> singular_values) {
    EmpiricalMeasure mu;
    mu.atoms.reserve(singular_values.size());
    for (double s : singular_values) {
        require(s >= 0.0, "singular values must be nonnegative");
        mu.atoms.emplace_back(s, 0.0);
    }
    return mu;
}

LogPotential log_potential_empirical(std::span<const double> svals, double floor) {
    require(floor > 0.0, "log floor must be positive");
    require(!svals.empty(), "need at least one singular value");
    require(std::is_sorted(svals.begin(), svals.end(), std::greater<>()), "singular values must be nonincreasing");
    LogPotential out;
    double sum = 0.0;
    for (double s : svals) {
        if (s < floor) {
            ++out.floored_count;
            s = floor;
        }
        sum += std::log(s);
    }
    out.value = -sum / static_cast<double>(svals.size());
    return out;
}

double log_potential_circular(Complex z) {
    const double r2 = std::norm(z);
    if (r2 < 1.0) return 0.5 * (1.0 - r2);
    return -0.5 * std::log(r2);
}

double km_density(Complex z, int d) {
    require(d >= 2, "Kesten-McKay density needs d >= 2");
    const double dd = d;
    const double r2 = std::norm(z);
    if (r2 >= dd) return 0.0;
    const double gap = dd * dd - r2;
    return dd * dd * (dd - 1.0) / (std::numbers::pi * gap * gap);
}

ReferenceLaw ReferenceLaw::kesten_mckay(int d) {
    require(d >= 2, "Kesten-McKay law needs d >= 2");
    return ReferenceLaw(Kind::KestenMcKay, d);
}

double ReferenceLaw::density(Complex w) const {
    if (kind_ == Kind::Circular) return std::norm(w) < 1.0 ? 1.0 / std::numbers::pi : 0.0;
    // Pushforward of the density on |z| < sqrt(d) under z = sqrt(d) w.
    const double dd = d_;
    return dd * km_density(std::sqrt(dd) * w, d_);
}

double ReferenceLaw::radial_cdf(double r) const {
    if (r <= 0.0) return 0.0;
    if (r >= 1.0) return 1.0;
    const double r2 = r * r;
    if (kind_ == Kind::Circular) return r2;
    const double dd = d_;
    return (dd - 1.0) * r2 / (dd - r2);
}

std::string ReferenceLaw::name() const {
    return kind_ == Kind::Circular ? "circular" : "kesten-mckay(" + std::to_string(d_) + ")";
}

namespace {

/// sup |F_hat - F| for a sorted sample against a continuous CDF already
/// evaluated at the sample points.
double kolmogorov_sup(const std::vector<double>& cdf_at_sorted) {
    const double n = static_cast<double>(cdf_at_sorted.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < cdf_at_sorted.size(); ++i) {
        const double f = cdf_at_sorted[i];
        sup = std::max({sup, (i + 1) / n - f, f - i / n});
    }
    return sup;
}

}  // namespace

double radial_cdf_distance(const EmpiricalMeasure& mu, const ReferenceLaw& law) {
    require(mu.size() > 0, "empty measure");
    std::vector<double> radii;
    radii.reserve(mu.size());
    for (const auto& a : mu.atoms) radii.push_back(std::abs(a));
    std::sort(radii.begin(), radii.end());
    for (auto& r : radii) r = law.radial_cdf(r);
    return kolmogorov_sup(radii);
}

double angular_ks_distance(const EmpiricalMeasure& mu) {
    require(mu.size() > 0, "empty measure");
    std::vector<double> angles;
    angles.reserve(mu.size());
    for (const auto& a : mu.atoms) {
        double t = std::arg(a);
        if (t < 0.0) t += 2.0 * std::numbers::pi;
        angles.push_back(t / (2.0 * std::numbers::pi));
    }
    std::sort(angles.begin(), angles.end());
    return kolmogorov_sup(angles);
}

RegimeBoundaries regime_boundaries(int n, int d, double C) {
    require(n >= 1 && d >= 1, "n and d must be positive");
    const double nn = n;
    const double dd = d;
    RegimeBoundaries b;
    b.b1 = static_cast<long long>(std::floor(nn - C * nn * std::pow(dd, -1.0 / 48.0)));
    b.b2 = static_cast<long long>(std::floor(nn - 2.0 * nn / std::pow(dd, 1.5)));
    const double ln = std::log(nn);
    // n = 1 gives ln n = 0: the last regime is then everything.
    b.b3 = ln > 0.0 ? static_cast<long long>(std::floor(nn - nn / (ln * ln))) : std::numeric_limits<long long>::min();
    return b;
}

TailReport tail_log_sum(std::span<const double> svals, double T, int d, double C) {
    require(T > 0.0, "T must be positive");
    require(!svals.empty(), "need at least one singular value");
    require(std::is_sorted(svals.begin(), svals.end(), std::greater<>()), "singular values must be nonincreasing");
    const int n = static_cast<int>(svals.size());
    TailReport report;
    report.T = T;
    report.bounds = regime_boundaries(n, d, C);
    const double hi = std::exp(T);
    const double lo = std::exp(-T);
    for (int i = 1; i <= n; ++i) {
        const double s = svals[i - 1];
        if (s >= hi) {
            report.large_sum += std::log(s);
            report.large_indices.push_back(i);
        } else if (s <= lo) {
            int regime = 3;
            if (i <= report.bounds.b1)
                regime = 0;
            else if (i <= report.bounds.b2)
                regime = 1;
            else if (i <= report.bounds.b3)
                regime = 2;
            // s == 0 contributes +inf, as the mathematics says.
            report.regime_sum[regime] += -std::log(s);
            report.regime_indices[regime].push_back(i);
        }
    }
    report.tail_sum = report.large_sum;
    for (double r : report.regime_sum) report.tail_sum += r;
    return report;
}

namespace {

template <class Bound>
BoundCheck check_range(std::span<const double> unscaled, long long k_lo, long long k_hi, bool hypotheses,
                       double floor, Bound bound) {
    BoundCheck check;
    check.k_lo = k_lo;
    check.k_hi = k_hi;
    check.applicable = hypotheses && k_lo <= k_hi;
    if (k_lo > k_hi) return check;
    check.margin = std::numeric_limits<double>::infinity();
    for (long long k = k_lo; k <= k_hi; ++k) {
        const double s = unscaled[k - 1];
        const double b = bound(k);
        const double margin = std::log(s) - std::log(b);
        if (margin < check.margin) {
            check.margin = margin;
            check.tightest_k = k;
        }
        if (s <= floor) check.resolved = false;
        if (s - floor < b) check.pass = false;
    }
    return check;
}

}  // namespace

SvBoundReport sv_bound_check(std::span<const double> svals, int d, Complex z, const BoundKnobs& knobs, double floor) {
    require(!svals.empty(), "need at least one singular value");
    require(d >= 1, "degree must be positive");
    require(std::is_sorted(svals.begin(), svals.end(), std::greater<>()), "singular values must be nonincreasing");
    require(knobs.C > 0.0 && knobs.c > 0.0, "bound constants must be positive");
    require(floor >= 0.0, "floor must be nonnegative");
    const long long n = static_cast<long long>(svals.size());
    const double nn = static_cast<double>(n);
    const double dd = d;
    const double root_d = std::sqrt(dd);
    const double w = std::abs(z) * root_d;  // |shift| on the unscaled matrix
    const double ln = std::log(nn);

    std::vector<double> unscaled(svals.begin(), svals.end());
    for (auto& s : unscaled) s *= root_d;

    SvBoundReport report;
    const bool smin_hyp = w <= dd / 6.0 && (n < 2 || dd <= nn / (ln * ln));
    report.smin = check_range(unscaled, n, n, smin_hyp, floor * root_d, [&](long long) { return std::pow(nn, -6.0); });

    const auto bounds = regime_boundaries(static_cast<int>(n), d, knobs.C);
    report.cook_anti = check_range(svals, 1, std::min(bounds.b1, n), true, floor,
                                   [&](long long k) { return knobs.c * (nn - k) / nn; });

    const long long lo = static_cast<long long>(std::ceil(nn - 2.0 * nn * std::pow(dd, -1.5)));
    long long hi = n - 1;
    if (ln > 0.0) hi = std::min(hi, static_cast<long long>(std::floor(nn - 3.0 * nn / std::pow(ln, 144.0))));
    const bool inter_hyp = d >= 2 && w <= root_d * std::log(dd);
    report.inter_sv = check_range(unscaled, std::max(lo, 1LL), hi, inter_hyp, floor * root_d, [&](long long k) {
        return std::exp(-knobs.C * std::pow(nn / (nn - k), 1.0 / 144.0));
    });
    return report;
}

}  // namespace regspec
