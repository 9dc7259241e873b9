#include "regspec/gaussian_normals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>

#include "regspec/errors.hpp"

namespace regspec {

ComplexVector sample_gaussian(int n, Rng& rng) {
    require(n >= 1, "dimension must be positive");
    ComplexVector g(n);
    for (auto& x : g) x = rng.complex_gaussian();
    return g;
}

ComplexVector sample_gaussian(int n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_gaussian(n, rng);
}

ComplexVector random_normal(const OrthonormalBasis& e, std::span<const Complex> g) { return e.project_complement(g); }

std::vector<double> order_statistics(std::span<const Complex> x) {
    std::vector<double> out;
    out.reserve(x.size());
    for (const auto& v : x) out.push_back(std::abs(v));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

namespace {

ComplexVector projected_unit(const OrthonormalBasis& e, int i) {
    ComplexVector unit(e.dimension(), Complex(0.0, 0.0));
    unit[i] = 1.0;
    return e.project_complement(unit);
}

double difference_norm(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector diff(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) diff[k] = a[k] - b[k];
    return norm2(diff);
}

}  // namespace

double pair_sigma(const OrthonormalBasis& e, int i, int j) {
    const int n = e.dimension();
    require(i >= 0 && i < n && j >= 0 && j < n, "index out of range");
    require(i != j, "pair_sigma needs distinct indices");
    return difference_norm(projected_unit(e, i), projected_unit(e, j));
}

bool strongly_correlated(double sigma, double alpha, double beta) {
    if (sigma == 0.0) return true;
    return std::exp(-alpha * alpha / (sigma * sigma)) <= beta;
}

CorrelationClusters build_clusters(const OrthonormalBasis& e, double alpha, double beta,
                                   std::optional<std::vector<bool>> active) {
    require(alpha > 0.0, "alpha must be positive");
    require(beta > 0.0 && beta <= 0.5, "beta must lie in (0, 1/2]");
    const int n = e.dimension();
    std::vector<bool> remaining = active.value_or(std::vector<bool>(n, true));
    require(static_cast<int>(remaining.size()) == n, "active mask has the wrong length");

    // P_{E^perp} e_i for every index; sigma_ij is the distance between two of them.
    std::vector<ComplexVector> projected(n);
    for (int i = 0; i < n; ++i)
        if (remaining[i]) projected[i] = projected_unit(e, i);
    std::vector<std::vector<bool>> corr(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
        if (!remaining[i]) continue;
        corr[i][i] = true;
        for (int j = i + 1; j < n; ++j) {
            if (!remaining[j]) continue;
            const bool c = strongly_correlated(difference_norm(projected[i], projected[j]), alpha, beta);
            corr[i][j] = corr[j][i] = c;
        }
    }

    CorrelationClusters out;
    out.alpha = alpha;
    out.beta = beta;
    int left = static_cast<int>(std::count(remaining.begin(), remaining.end(), true));
    while (left > 0) {
        int anchor = -1;
        int best = 0;
        for (int u = 0; u < n; ++u) {
            if (!remaining[u]) continue;
            int size = 0;
            for (int v = 0; v < n; ++v) size += remaining[v] && corr[u][v];
            if (size > best) {
                best = size;
                anchor = u;
            }
        }
        std::vector<int> cluster;
        for (int v = 0; v < n; ++v)
            if (remaining[v] && corr[anchor][v]) cluster.push_back(v);
        for (int v : cluster) remaining[v] = false;
        left -= static_cast<int>(cluster.size());
        out.clusters.push_back(std::move(cluster));
        out.anchors.push_back(anchor);
    }
    return out;
}

const int kPartitionOffsets[9][2] = {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 1}, {1, 2}, {2, 2}};

Complex PlaneCell::center(double rho) const {
    if (layer < 1 || layer > 9) throw PreconditionError("uncovered cell has no centre");
    const auto& a = kPartitionOffsets[layer - 1];
    return {rho * (a[0] + 3.0 * static_cast<double>(jx)), rho * (a[1] + 3.0 * static_cast<double>(jy))};
}

PlaneCell plane_partition_cell(Complex w, double rho) {
    require(rho > 0.0, "rho must be positive");
    const double x = w.real() / rho;
    const double y = w.imag() / rho;
    for (int layer = 1; layer <= 9; ++layer) {
        const auto& a = kPartitionOffsets[layer - 1];
        // Balls of one layer are 3 rho apart, so only the nearest centre can contain w.
        const double jx = std::round((x - a[0]) / 3.0);
        const double jy = std::round((y - a[1]) / 3.0);
        const double dx = x - (a[0] + 3.0 * jx);
        const double dy = y - (a[1] + 3.0 * jy);
        if (dx * dx + dy * dy < 1.0) return {layer, static_cast<long long>(jx), static_cast<long long>(jy)};
    }
    return {};
}

LevelProfile level_count(std::span<const Complex> x, double rho, const std::vector<bool>& exclude) {
    require(rho > 0.0, "rho must be positive");
    const std::size_t n = x.size();
    require(exclude.empty() || exclude.size() == n, "exclusion mask has the wrong length");
    auto skipped = [&](std::size_t k) { return !exclude.empty() && exclude[k]; };
    const double r1 = rho * rho;
    const double r2 = 4.0 * rho * rho;
    LevelProfile out;
    out.rho = rho;
    for (std::size_t i = 0; i < n; ++i) {
        if (skipped(i)) continue;
        int c1 = 0, c2 = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (skipped(k)) continue;
            const double dist = std::norm(x[k] - x[i]);
            c1 += dist <= r1;
            c2 += dist <= r2;
        }
        if (c1 > out.count) {
            out.count = c1;
            out.best_center = x[i];
        }
        out.count_double = std::max(out.count_double, c2);
    }
    return out;
}

std::string to_string(StructureKind kind) {
    switch (kind) {
        case StructureKind::VerySteep:
            return "very-steep";
        case StructureKind::SlopingManyLevels:
            return "sloping-many-levels";
        case StructureKind::Neither:
            break;
    }
    return "neither";
}

StructureLabel classify_normal(std::span<const Complex> x, int ic_size, double a, double gamma) {
    const int n = static_cast<int>(x.size());
    require(n >= 1, "empty vector");
    require(ic_size >= 1 && a > 0.0 && gamma > 0.0, "ic_size, a and gamma must be positive");
    const auto k = static_cast<int>(std::floor(a * ic_size));
    require(k >= 1 && k <= n, "need 1 <= a * ic_size <= n");
    const auto xs = order_statistics(x);
    require(xs.front() > 0.0, "zero vector has no structure label");

    StructureLabel label;
    const double ref = xs[k - 1];
    const double nn = n;
    label.decay_margin = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= k; ++i) {
        const double ratio = nn / i;
        const double ceiling = 0.9 * ratio * ratio * ratio * ref;
        label.decay_margin = std::min(label.decay_margin, ceiling - xs[i - 1]);
        if (xs[i - 1] > ceiling && label.steep_index == 0) label.steep_index = i;
    }
    if (label.steep_index > 0) {
        label.kind = StructureKind::VerySteep;
        return label;
    }
    label.level_radius = std::exp(-2.0 * std::pow(nn / ic_size, gamma)) * ref;
    label.level_limit = std::pow(static_cast<double>(ic_size) / nn, gamma / 2.0) * nn;
    const auto profile = level_count(x, label.level_radius);
    label.level_count = profile.count;
    label.level_count_double = profile.count_double;
    if (profile.count_double <= label.level_limit) {
        label.kind = StructureKind::SlopingManyLevels;
    } else {
        label.kind = StructureKind::Neither;
        label.undecided_level = profile.count <= label.level_limit;
    }
    return label;
}

std::string to_json(const ExperimentRecord& record) {
    nlohmann::ordered_json j;
    j["lemma_id"] = record.lemma_id;
    j["params"] = record.params;
    j["empirical_freq"] = record.empirical_freq;
    j["bound_value"] = record.bound_value;
    j["n_trials"] = record.n_trials;
    j["stderr"] = record.std_error;
    return j.dump();
}

namespace {

ExperimentRecord frequency_record(std::string id, std::map<std::string, double> params, long long hits,
                                  long long trials, double bound) {
    ExperimentRecord r;
    r.lemma_id = std::move(id);
    r.params = std::move(params);
    r.n_trials = trials;
    r.empirical_freq = trials > 0 ? static_cast<double>(hits) / trials : 0.0;
    r.std_error = trials > 0 ? std::sqrt(r.empirical_freq * (1.0 - r.empirical_freq) / trials) : 0.0;
    r.bound_value = bound;
    return r;
}

}  // namespace

std::vector<ExperimentRecord> orderstat_experiments(const OrthonormalBasis& e, int trials, std::uint64_t seed,
                                                    const OrderStatGrid& grid) {
    require(trials >= 1, "trials must be positive");
    const int n = e.dimension();
    const int m = n - e.rank();
    const double nn = n;

    struct SmallBall {
        double c;
        int index;
        double threshold;
    };
    std::vector<SmallBall> small;
    for (double c : grid.small_c) {
        require(c > 0.0, "small-ball constants must be positive");
        const int index = std::clamp(static_cast<int>(std::ceil(c * m)), 1, n);
        small.push_back({c, index, c * m / nn});
    }
    struct Large {
        double C;
        int i;
        double threshold;
    };
    std::vector<Large> large;
    for (double C : grid.large_C)
        for (int i : grid.large_i)
            if (i >= 1 && 2 * i <= n) large.push_back({C, i, C * std::sqrt(std::log(nn / i))});

    std::vector<long long> small_hits(small.size(), 0), large_hits(large.size(), 0);
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        const auto y = random_normal(e, sample_gaussian(n, rng));
        const auto ys = order_statistics(y);
        for (std::size_t s = 0; s < small.size(); ++s) small_hits[s] += ys[small[s].index - 1] <= small[s].threshold;
        for (std::size_t l = 0; l < large.size(); ++l) large_hits[l] += ys[large[l].i - 1] >= large[l].threshold;
    }

    std::vector<ExperimentRecord> out;
    for (std::size_t s = 0; s < small.size(); ++s) {
        const auto& sb = small[s];
        out.push_back(frequency_record("orderstat-small-ball",
                                       {{"n", nn}, {"m", double(m)}, {"c", sb.c}, {"index", double(sb.index)},
                                        {"threshold", sb.threshold}},
                                       small_hits[s], trials, std::exp(-sb.c * m)));
    }
    for (std::size_t l = 0; l < large.size(); ++l) {
        const auto& ld = large[l];
        out.push_back(frequency_record("orderstat-large-deviation",
                                       {{"n", nn}, {"m", double(m)}, {"C", ld.C}, {"i", double(ld.i)},
                                        {"threshold", ld.threshold}},
                                       large_hits[l], trials, std::pow(ld.i / nn, ld.i)));
    }
    return out;
}

}  // namespace regspec
