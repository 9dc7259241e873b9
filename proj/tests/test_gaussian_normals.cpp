#include "doctest_main.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

#include "regspec/errors.hpp"
#include "regspec/gaussian_normals.hpp"

using namespace regspec;

namespace {

ComplexVector unit(int n, int i) {
    ComplexVector v(n, 0.0);
    v[i] = 1.0;
    return v;
}

ComplexVector diff(int n, int i, int j) {
    ComplexVector v(n, 0.0);
    v[i] = 1.0;
    v[j] = -1.0;
    return v;
}

OrthonormalBasis random_subspace(int n, int k, Rng& rng) {
    OrthonormalBasis e(n);
    while (e.rank() < k) {
        ComplexVector v(n);
        for (auto& x : v) x = rng.complex_gaussian();
        e.add(v);
    }
    return e;
}

// Exhaustive version of one greedy step: the largest subset of `remaining`
// admitting an anchor correlated with all members.
std::size_t best_cardinality(const std::vector<std::vector<bool>>& corr, const std::vector<int>& remaining) {
    const int r = static_cast<int>(remaining.size());
    std::size_t best = 0;
    for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
        for (int a = 0; a < r; ++a) {
            if (!(mask >> a & 1u)) continue;
            bool ok = true;
            for (int b = 0; b < r && ok; ++b)
                if (mask >> b & 1u) ok = corr[remaining[a]][remaining[b]];
            if (ok) best = std::max<std::size_t>(best, std::popcount(mask));
        }
    }
    return best;
}

void check_clusters_exhaustively(const OrthonormalBasis& e, double alpha, double beta) {
    const int n = e.dimension();
    std::vector<std::vector<bool>> corr(n, std::vector<bool>(n, true));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) corr[i][j] = strongly_correlated(pair_sigma(e, i, j), alpha, beta);
    const auto cl = build_clusters(e, alpha, beta);
    std::vector<int> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::set<int> seen;
    for (std::size_t l = 0; l < cl.clusters.size(); ++l) {
        const auto& u = cl.clusters[l];
        CHECK(u.size() == best_cardinality(corr, remaining));
        CHECK(std::find(u.begin(), u.end(), cl.anchors[l]) != u.end());
        for (int v : u) {
            CHECK(corr[cl.anchors[l]][v]);
            CHECK(seen.insert(v).second);
        }
        if (l > 0) CHECK(cl.clusters[l - 1].size() >= u.size());
        std::erase_if(remaining, [&](int v) { return std::find(u.begin(), u.end(), v) != u.end(); });
    }
    CHECK(remaining.empty());
}

}  // namespace

TEST_CASE("sample_gaussian") {
    SUBCASE("variance and modulus law") {
        Rng rng(1);
        const int samples = 1000000;
        const auto g = sample_gaussian(samples, rng);
        double mean_sq = 0;
        std::array<int, 3> below{};
        const std::array<double, 3> t = {0.5, 1.0, 2.0};
        for (const auto& x : g) {
            mean_sq += std::norm(x);
            for (int k = 0; k < 3; ++k) below[k] += std::abs(x) <= t[k];
        }
        CHECK(std::abs(mean_sq / samples - 1.0) < 0.005);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(below[k] / double(samples) - (1 - std::exp(-t[k] * t[k]))) < 3e-3);
        // Real and imaginary parts have variance 1/2 each.
        double re = 0, im = 0;
        for (const auto& x : g) {
            re += x.real() * x.real();
            im += x.imag() * x.imag();
        }
        CHECK(std::abs(re / samples - 0.5) < 0.005);
        CHECK(std::abs(im / samples - 0.5) < 0.005);
    }
    SUBCASE("determinism") {
        CHECK(sample_gaussian(50, 77) == sample_gaussian(50, 77));
        CHECK(sample_gaussian(50, 77) != sample_gaussian(50, 78));
    }
}

TEST_CASE("random_normal") {
    const int n = 8;
    Rng rng(2);
    const auto g = sample_gaussian(n, rng);
    CHECK(random_normal(OrthonormalBasis(n), g) == g);

    OrthonormalBasis full(n);
    for (int i = 0; i < n; ++i) full.add(unit(n, i));
    for (auto y : random_normal(full, g)) CHECK(std::abs(y) < 1e-10);

    const int k = 3;
    OrthonormalBasis coord(n);
    for (int i = 0; i < k; ++i) coord.add(unit(n, i));
    const auto y = random_normal(coord, g);
    for (int i = 0; i < k; ++i) CHECK(std::abs(y[i]) < 1e-15);
    for (int i = k; i < n; ++i) CHECK(y[i] == g[i]);

    const auto e = random_subspace(n, 4, rng);
    const auto z = random_normal(e, g);
    for (const auto& q : e.vectors()) CHECK(std::abs(inner(q, z)) < 1e-10 * norm2(g));

    SUBCASE("coordinate block statistics") {
        const int trials = 100000;
        double mean = 0;
        for (int t = 0; t < trials; ++t) {
            const auto v = random_normal(coord, sample_gaussian(n, rng));
            for (int i = k; i < n; ++i) mean += std::norm(v[i]);
        }
        CHECK(std::abs(mean / (trials * (n - k)) - 1.0) < 0.01);
    }
}

TEST_CASE("order_statistics") {
    const std::vector<Complex> x = {1.0, Complex(0, -2), 0.0};
    CHECK(order_statistics(x) == std::vector<double>{2.0, 1.0, 0.0});
    CHECK(order_statistics(std::vector<Complex>(4, Complex(3, 4))) == std::vector<double>(4, 5.0));
    Rng rng(3);
    const auto g = sample_gaussian(300, rng);
    std::vector<double> naive;
    for (auto v : g) naive.push_back(std::abs(v));
    for (std::size_t i = 0; i < naive.size(); ++i)
        for (std::size_t j = i + 1; j < naive.size(); ++j)
            if (naive[j] > naive[i]) std::swap(naive[i], naive[j]);
    CHECK(order_statistics(g) == naive);
}

TEST_CASE("pair_sigma") {
    const int n = 6;
    CHECK(pair_sigma(OrthonormalBasis(n), 0, 3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    OrthonormalBasis e(n);
    e.add(diff(n, 1, 4));
    CHECK(pair_sigma(e, 1, 4) < 1e-15);
    CHECK(strongly_correlated(pair_sigma(e, 1, 4), 1e-6, 1e-300));
    CHECK_THROWS_AS(pair_sigma(e, 2, 2), PreconditionError);

    Rng rng(4);
    const auto r = random_subspace(10, 5, rng);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            if (i != j) CHECK(pair_sigma(r, i, j) == pair_sigma(r, j, i));

    SUBCASE("Monte Carlo tail") {
        const double sigma = pair_sigma(r, 2, 7);
        const double alpha = 0.8 * sigma;
        const int trials = 100000;
        int hits = 0;
        for (int t = 0; t < trials; ++t) {
            const auto y = random_normal(r, sample_gaussian(10, rng));
            hits += std::abs(y[2] - y[7]) >= alpha;
        }
        const double p = std::exp(-alpha * alpha / (sigma * sigma));
        const double se = std::sqrt(p * (1 - p) / trials);
        CHECK(std::abs(hits / double(trials) - p) <= 3 * se);
    }
}

TEST_CASE("build_clusters") {
    SUBCASE("trivial subspace gives singletons") {
        const double beta = 0.25;
        const double alpha = 0.5;  // exp(-alpha^2 / 2) > beta
        const auto cl = build_clusters(OrthonormalBasis(5), alpha, beta);
        REQUIRE(cl.clusters.size() == 5);
        CHECK(cl.clusters[0] == std::vector<int>{0});
        for (int i = 0; i < 5; ++i) CHECK(cl.anchors[i] == i);
    }
    SUBCASE("one correlated pair") {
        OrthonormalBasis e(5);
        e.add(diff(5, 0, 1));
        const auto cl = build_clusters(e, 0.5, 0.25);
        CHECK(cl.clusters[0] == std::vector<int>{0, 1});
    }
    SUBCASE("planted blocks, exhaustive check") {
        const int n = 6;
        OrthonormalBasis e(n);
        e.add(diff(n, 0, 1));
        e.add(diff(n, 1, 2));
        e.add(diff(n, 3, 4));
        const auto cl = build_clusters(e, 1.0, 0.01);
        REQUIRE(cl.clusters.size() == 3);
        CHECK(cl.clusters[0] == std::vector<int>{0, 1, 2});
        CHECK(cl.clusters[1] == std::vector<int>{3, 4});
        CHECK(cl.clusters[2] == std::vector<int>{5});
        check_clusters_exhaustively(e, 1.0, 0.01);
    }
    SUBCASE("random subspaces, exhaustive check and rerun property") {
        Rng rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            const auto e = random_subspace(6, 2 + trial % 3, rng);
            for (double alpha : {0.3, 0.6, 1.0}) {
                check_clusters_exhaustively(e, alpha, 0.3);
                const auto cl = build_clusters(e, alpha, 0.3);
                CHECK(build_clusters(e, alpha, 0.3).clusters == cl.clusters);
                std::vector<bool> active(6, true);
                for (std::size_t l = 0; l + 1 < cl.clusters.size(); ++l) {
                    for (int v : cl.clusters[l]) active[v] = false;
                    const auto again = build_clusters(e, alpha, 0.3, active);
                    CHECK(again.clusters.front() == cl.clusters[l + 1]);
                    CHECK(again.anchors.front() == cl.anchors[l + 1]);
                }
            }
        }
    }
    CHECK_THROWS_AS(build_clusters(OrthonormalBasis(3), 0.0, 0.1), PreconditionError);
    CHECK_THROWS_AS(build_clusters(OrthonormalBasis(3), 1.0, 0.6), PreconditionError);
}

TEST_CASE("plane_partition_cell") {
    const double rho = 0.7;
    CHECK(plane_partition_cell(0.0, rho) == PlaneCell{1, 0, 0});
    CHECK(plane_partition_cell(Complex(rho, 0), rho) == PlaneCell{2, 0, 0});
    CHECK(plane_partition_cell(Complex(0, 2 * rho), rho) == PlaneCell{5, 0, 0});
    CHECK(plane_partition_cell(Complex(3 * rho, -3 * rho), rho) == PlaneCell{1, 1, -1});
    CHECK(PlaneCell{6, 0, 1}.center(2.0) == Complex(2.0, 8.0));

    Rng rng(6);
    std::vector<Complex> pts;
    std::vector<PlaneCell> cells;
    for (int t = 0; t < 20000; ++t) {
        const Complex w(20 * (rng.uniform01() - 0.5), 20 * (rng.uniform01() - 0.5));
        const auto c = plane_partition_cell(w, rho);
        REQUIRE(c.layer >= 1);
        CHECK(std::abs(w - c.center(rho)) < rho);
        // No earlier layer contains w.
        for (int layer = 1; layer < c.layer; ++layer) {
            const auto& a = kPartitionOffsets[layer - 1];
            for (int jx = -6; jx <= 6; ++jx)
                for (int jy = -6; jy <= 6; ++jy)
                    CHECK(std::abs(w - Complex(rho * (a[0] + 3 * jx), rho * (a[1] + 3 * jy))) >= rho);
        }
        pts.push_back(w);
        cells.push_back(c);
    }
    for (std::size_t t = 0; t + 1 < pts.size(); t += 2) {
        if (cells[t].layer == cells[t + 1].layer && !(cells[t] == cells[t + 1]))
            CHECK(std::abs(pts[t] - pts[t + 1]) >= rho);
    }
}

TEST_CASE("level_count") {
    const std::vector<Complex> constant(9, Complex(1, 2));
    const auto c = level_count(constant, 0.1);
    CHECK(c.count == 9);
    CHECK(c.count_double == 9);

    std::vector<Complex> spread;
    for (int i = 0; i < 10; ++i) spread.emplace_back(3.5 * i, 0);
    CHECK(level_count(spread, 1.0).count == 1);
    CHECK(level_count(spread, 1.0).count_double == 1);

    std::vector<Complex> planted = spread;
    for (int i = 0; i < 6; ++i) planted.emplace_back(7.0, 0.0);
    const auto p = level_count(planted, 0.5);
    CHECK(p.count >= 6);
    CHECK(p.best_center == Complex(7.0, 0.0));

    std::vector<bool> exclude(planted.size(), false);
    for (std::size_t i = 10; i < planted.size(); ++i) exclude[i] = true;
    CHECK(level_count(planted, 0.5, exclude).count == 1);

    // The candidate-centre bounds bracket the optimum: three points on a line
    // at spacing rho fit one rho-ball centred at the middle point.
    const std::vector<Complex> line = {0.0, 1.0, 2.0};
    const auto l = level_count(line, 1.0);
    CHECK(l.count == 3);
    const auto l2 = level_count(line, 0.6);
    CHECK(l2.count == 1);          // candidate centres only see themselves
    CHECK(l2.count_double == 3);   // true optimum (2, at lambda = 0.5) is bracketed
}

TEST_CASE("classify_normal") {
    const int n = 400;
    std::vector<Complex> e1(n, 0.0);
    e1[0] = 1.0;
    const auto steep = classify_normal(e1, 8, 0.5);
    CHECK(steep.kind == StructureKind::VerySteep);
    CHECK(steep.steep_index == 1);

    std::vector<Complex> sloping(n);
    for (int i = 1; i <= n; ++i) sloping[i - 1] = std::polar(std::pow(double(n) / i, 3.0), 0.1 * i);
    const auto s = classify_normal(sloping, 8, 0.5);
    CHECK(s.kind == StructureKind::SlopingManyLevels);
    CHECK(s.decay_margin >= 0.0);
    CHECK(s.level_count_double <= s.level_limit);

    const std::vector<Complex> constant(n, Complex(0.3, 0.3));
    const auto c = classify_normal(constant, 8, 0.5);
    CHECK(c.kind == StructureKind::Neither);
    CHECK(c.level_count == n);
    CHECK_FALSE(c.undecided_level);

    CHECK_THROWS_AS(classify_normal(std::vector<Complex>(n, 0.0), 8, 0.5), PreconditionError);
    CHECK_THROWS_AS(classify_normal(constant, 1, 0.5), PreconditionError);
    CHECK(to_string(StructureKind::SlopingManyLevels) == "sloping-many-levels");
}

TEST_CASE("orderstat_experiments") {
    SUBCASE("independent coordinates: exact minimum law") {
        OrderStatGrid grid;
        grid.small_c = {1.0};
        grid.large_C = {0.8};
        grid.large_i = {1};
        const int trials = 100000;
        const auto recs = orderstat_experiments(OrthonormalBasis(2), trials, 9, grid);
        REQUIRE(recs.size() == 2);
        // Y*_2 = min of two moduli; P{min <= 1} = 1 - exp(-2).
        const double p = 1 - std::exp(-2.0);
        CHECK(recs[0].lemma_id == "orderstat-small-ball");
        CHECK(recs[0].params.at("index") == 2);
        CHECK(std::abs(recs[0].empirical_freq - p) <= 4 * std::sqrt(p * (1 - p) / trials));
        // Y*_1 = max of two moduli; P{max >= t} = 1 - (1 - exp(-t^2))^2.
        const double t = 0.8 * std::sqrt(std::log(2.0));
        const double q = 1 - std::pow(1 - std::exp(-t * t), 2);
        CHECK(std::abs(recs[1].empirical_freq - q) <= 4 * std::sqrt(q * (1 - q) / trials));
        CHECK(recs[1].std_error == doctest::Approx(std::sqrt(recs[1].empirical_freq * (1 - recs[1].empirical_freq) / trials)));
    }
    SUBCASE("full subspace: Y = 0") {
        const int n = 6;
        OrthonormalBasis full(n);
        for (int i = 0; i < n; ++i) full.add(unit(n, i));
        for (const auto& r : orderstat_experiments(full, 50, 1)) {
            if (r.lemma_id == "orderstat-small-ball") CHECK(r.empirical_freq == 1.0);
            else CHECK(r.empirical_freq == 0.0);
        }
    }
    SUBCASE("n = 200, m = 100: frequencies under the ceilings") {
        Rng rng(10);
        const auto e = random_subspace(200, 100, rng);
        const auto recs = orderstat_experiments(e, 400, 11);
        for (const auto& r : recs) CHECK(r.empirical_freq <= r.bound_value + 3 * r.std_error);
        const auto j = nlohmann::json::parse(to_json(recs.front()));
        CHECK(j.at("lemma_id") == "orderstat-small-ball");
        CHECK(j.at("n_trials") == 400);
        CHECK(j.contains("stderr"));
        CHECK(j.at("params").at("m") == 100.0);
    }
}
