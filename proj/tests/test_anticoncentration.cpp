#include "doctest_main.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "regspec/anticoncentration.hpp"
#include "regspec/errors.hpp"
#include "regspec/hermitization.hpp"
#include "regspec/projection.hpp"
#include "regspec/spectra.hpp"
#include "test_support.hpp"

using namespace regspec;

namespace {

std::vector<int> range(int lo, int hi) {
    std::vector<int> v(hi - lo);
    std::iota(v.begin(), v.end(), lo);
    return v;
}

// Law of row u over the matrices that agree with m outside `rows`, by
// filtering the full enumeration.
std::map<std::vector<int>, long long> filtered_law(const RegularDigraph& m, const std::vector<int>& rows, int u) {
    std::map<std::vector<int>, long long> law;
    for_each_regular(m.n(), m.d(), [&](const RegularDigraph& g) {
        for (int r = 0; r < m.n(); ++r) {
            if (std::find(rows.begin(), rows.end(), r) != rows.end()) continue;
            for (int c = 0; c < m.n(); ++c)
                if (g.has_edge(r, c) != m.has_edge(r, c)) return;
        }
        const auto s = g.row_support(u);
        ++law[std::vector<int>(s.begin(), s.end())];
    });
    return law;
}

double chi_square_pvalue(const std::map<std::vector<int>, long long>& observed,
                         const std::map<std::vector<int>, long long>& law, long long draws) {
    long long total = 0;
    for (const auto& [s, c] : law) total += c;
    double stat = 0.0;
    for (const auto& [s, c] : law) {
        const double expected = static_cast<double>(draws) * c / total;
        const auto it = observed.find(s);
        const double o = it == observed.end() ? 0.0 : static_cast<double>(it->second);
        stat += (o - expected) * (o - expected) / expected;
    }
    for (const auto& [s, c] : observed) REQUIRE(law.count(s) == 1);
    return boost::math::gamma_q((law.size() - 1) / 2.0, stat / 2.0);
}

}  // namespace

TEST_CASE("quarter_root matches the integer definition") {
    for (int n = 0; n <= 20000; ++n) {
        const long long k = quarter_root(n);
        CHECK(k * k * k * k <= n);
        CHECK((k + 1) * (k + 1) * (k + 1) * (k + 1) > n);
    }
    CHECK(quarter_root(1000) == 5);
    CHECK(quarter_root(1296) == 6);
    CHECK(quarter_root(1295) == 5);
}

TEST_CASE("sample_I is a uniform subset of J") {
    const auto J = range(0, 16);
    std::map<std::vector<int>, int> index;
    for (int a = 0; a < 16; ++a)
        for (int b = a + 1; b < 16; ++b) index[{a, b}] = static_cast<int>(index.size());
    std::vector<double> counts(index.size(), 0.0);
    Rng rng(7);
    for (int t = 0; t < 100000; ++t) {
        const auto I = sample_I(J, 16, rng);
        REQUIRE(I.size() == 2);
        REQUIRE(I[0] < I[1]);
        counts[index.at(I)] += 1;
    }
    CHECK(testing::chi_square_uniform_pvalue(counts) > 1e-3);
    CHECK(sample_I(J, 16, 99) == sample_I(J, 16, 99));
    CHECK(sample_I({4, 9}, 16, rng) == std::vector<int>{4, 9});
    CHECK_THROWS_AS(sample_I({3}, 16, rng), PreconditionError);
}

TEST_CASE("support unions and disjointness") {
    const auto m = RegularDigraph::circulant(8, 3);
    SUBCASE("union matches a naive scan") {
        const std::vector<int> rows = {0, 5};
        std::vector<int> naive;
        for (int c = 0; c < 8; ++c)
            if (m.has_edge(0, c) || m.has_edge(5, c)) naive.push_back(c);
        CHECK(support_union(m, rows) == naive);
    }
    SUBCASE("disjointness") {
        CHECK(supports_pairwise_disjoint(m, {0, 3}));
        CHECK_FALSE(supports_pairwise_disjoint(m, {0, 2}));
        CHECK(supports_pairwise_disjoint(RegularDigraph::permutation({1, 2, 3, 0}), {0, 1, 2, 3}));
        CHECK_FALSE(supports_pairwise_disjoint(RegularDigraph::circulant(4, 4), {0, 1}));
    }
}

TEST_CASE("disjointness frequency against the exact subset average") {
    // n = 16, so |I| = 2; circulant rows i and j overlap iff |i - j| mod 16 < 2.
    const auto m = RegularDigraph::circulant(16, 2);
    const auto J = range(1, 9);
    const int u = 0;
    int good = 0, total = 0;
    for (std::size_t a = 0; a < J.size(); ++a)
        for (std::size_t b = a + 1; b < J.size(); ++b) {
            ++total;
            good += supports_pairwise_disjoint(m, {J[a], J[b], u});
        }
    const double exact = static_cast<double>(good) / total;
    const auto est = disjointness_frequency(m, J, u, 20000, 5);
    CHECK(est.trials == 20000);
    CHECK(std::abs(est.frequency - exact) <= 4.0 * std::sqrt(exact * (1 - exact) / 20000) + 1e-12);
    CHECK(est.std_error == doctest::Approx(std::sqrt(est.frequency * (1 - est.frequency) / 20000)));

    CHECK(disjointness_frequency(RegularDigraph::circulant(16, 16), J, u, 200, 1).frequency == 0.0);
    CHECK(disjointness_frequency(RegularDigraph::permutation(range(0, 16)), J, u, 200, 1).frequency == 1.0);
    CHECK_THROWS_AS(disjointness_frequency(m, J, 1, 10, 1), PreconditionError);
}

TEST_CASE("ResamplerSpec validation") {
    const auto m = RegularDigraph::circulant(16, 2);
    CHECK_NOTHROW(ResamplerSpec{m, range(1, 9), 0, std::nullopt}.validate());
    CHECK_THROWS_AS((ResamplerSpec{m, range(1, 8), 0, std::nullopt}.validate()), PreconditionError);
    CHECK_THROWS_AS((ResamplerSpec{m, range(0, 8), 0, std::nullopt}.validate()), PreconditionError);
    CHECK_NOTHROW(ResamplerSpec{m, range(1, 9), 0, std::vector<int>{}}.validate());
    CHECK_THROWS_AS((ResamplerSpec{m, range(1, 9), 0, std::vector<int>{1, 12}}.validate()), PreconditionError);
    CHECK_NOTHROW(ResamplerSpec{m, range(1, 9), 0, std::vector<int>{2, 5}}.validate());
}

TEST_CASE("sample_X follows the conditional law") {
    const auto m = RegularDigraph::from_rows(4, 2, {{0, 1}, {2, 3}, {0, 2}, {1, 3}});
    const ResamplerSpec spec{m, {1, 2}, 0, std::vector<int>{2}};
    const auto law = filtered_law(m, {0, 2}, 0);
    REQUIRE(law.size() >= 2);

    SUBCASE("exact law agrees with filtering") {
        XSampler sampler(spec);
        const auto& exact = sampler.exact_law({2});
        REQUIRE(exact.has_value());
        std::map<std::vector<int>, long long> got;
        for (std::size_t s = 0; s < exact->supports.size(); ++s) got[exact->supports[s]] = exact->counts[s];
        CHECK(got == law);
    }
    SUBCASE("exact sampler") {
        XSampler sampler(spec);
        Rng rng(11);
        std::map<std::vector<int>, long long> seen;
        const long long draws = 100000;
        for (long long t = 0; t < draws; ++t) {
            const auto x = sampler.sample(rng);
            REQUIRE(x.exact);
            REQUIRE(x.I0 == std::vector<int>{2});
            ++seen[x.support];
        }
        CHECK(chi_square_pvalue(seen, law, draws) > 1e-3);
    }
    SUBCASE("restricted chain") {
        XOptions options;
        options.exact_limit = 0;
        XSampler sampler(spec, options);
        Rng rng(12);
        std::map<std::vector<int>, long long> seen;
        const long long draws = 20000;
        for (long long t = 0; t < draws; ++t) {
            const auto x = sampler.sample(rng);
            REQUIRE_FALSE(x.exact);
            ++seen[x.support];
        }
        CHECK(chi_square_pvalue(seen, law, draws) > 1e-3);
    }
    SUBCASE("empty I0 pins row u") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto x = sample_X(ResamplerSpec{m, {1, 2}, 0, std::vector<int>{}}, seed);
            CHECK(x.exact);
            CHECK(x.support == std::vector<int>{0, 1});
        }
    }
    SUBCASE("drawn I0 stays in the family") {
        const auto x = sample_X(ResamplerSpec{m, {1, 2}, 0, std::nullopt}, 3);
        REQUIRE(x.I0.size() == 1);
        CHECK(filtered_law(m, {0, x.I0[0]}, 0).count(x.support) == 1);
    }
    SUBCASE("deterministic under a fixed seed") {
        const ResamplerSpec free{m, {1, 2}, 0, std::nullopt};
        const auto a = sample_X(free, 77);
        const auto b = sample_X(free, 77);
        CHECK(a.support == b.support);
        CHECK(a.I0 == b.I0);
    }
}

TEST_CASE("uniform support check") {
    SUBCASE("n = 4, d = 1") {
        const auto m = RegularDigraph::permutation({1, 0, 3, 2});
        const auto check = uniform_support_check(m, {2}, 0);
        CHECK(check.hypothesis_disjoint);
        CHECK(check.S == std::vector<int>{1, 3});
        CHECK(check.expected_subsets == 2);
        CHECK(check.equinumerous);
        CHECK(check.total == 2);
    }
    SUBCASE("n = 6, d = 2 against filtering") {
        const auto m = RegularDigraph::circulant(6, 2);
        const auto check = uniform_support_check(m, {2}, 0);
        CHECK(check.hypothesis_disjoint);
        CHECK(check.S == std::vector<int>{0, 1, 2, 3});
        CHECK(check.expected_subsets == 6);
        CHECK(check.equinumerous);
        CHECK(check.counts == filtered_law(m, {0, 2}, 0));
    }
    SUBCASE("overlapping rows are reported") {
        const auto m = RegularDigraph::circulant(6, 2);
        const auto check = uniform_support_check(m, {1}, 0);
        CHECK_FALSE(check.hypothesis_disjoint);
        CHECK(check.S == std::vector<int>{0, 1, 2});
        CHECK(check.counts == filtered_law(m, {0, 1}, 0));
    }
}

TEST_CASE("coupling sampler") {
    const auto S = range(10, 20);
    const int d = 3;
    Rng rng(21);
    std::map<std::vector<int>, int> index;
    const int trials = 120000;
    int distinct = 0;
    std::vector<double> counts(120, 0.0);
    for (int t = 0; t < trials; ++t) {
        const auto draw = coupling_sampler(S, d, rng);
        REQUIRE(draw.xi.size() == 3);
        for (int x : draw.xi) REQUIRE((x >= 10 && x < 20));
        CHECK(draw.distinct == (draw.support().size() == 3));
        if (!draw.distinct) continue;
        ++distinct;
        const auto s = draw.support();
        const auto it = index.emplace(s, static_cast<int>(index.size())).first;
        counts[it->second] += 1;
    }
    const double collision = 1.0 - static_cast<double>(distinct) / trials;
    CHECK(collision <= static_cast<double>(d * d) / S.size());
    CHECK(collision == doctest::Approx(1.0 - 0.9 * 0.8).epsilon(0.02));
    CHECK(index.size() == 120);
    CHECK(testing::chi_square_uniform_pvalue(counts) > 1e-3);
}

TEST_CASE("small-ball experiment on degenerate vectors") {
    const int n = 16;
    const auto m = RegularDigraph::circulant(n, 2);
    const ResamplerSpec spec{m, range(1, 9), 0, std::nullopt};

    SUBCASE("constant y concentrates on d y_1") {
        const std::vector<Complex> y(n, Complex(1.0, 0.5));
        SmallBallParams p;
        p.rho = 0.1;
        p.lambda = Complex(2.0, 1.0);
        p.delta = 0.1;
        p.trials = 200;
        const auto r = smallball_experiment(y, spec, p);
        CHECK(r.estimate.frequency == 1.0);
        CHECK(r.hypothesis == HypothesisStatus::Violated);
        CHECK(r.level_count == n);
        CHECK(r.exact_draws == 200);
        CHECK(r.ceiling == doctest::Approx(144.0 * 0.1 + std::pow(16.0, -0.1)));
    }
    SUBCASE("spread y") {
        std::vector<Complex> y(n);
        for (int j = 0; j < n; ++j) y[j] = Complex(10.0 * j, 0.0);
        SmallBallParams p;
        p.rho = 1.0;
        p.lambda = Complex(-100.0, 0.0);
        p.delta = 1.0 / n;
        p.J_tilde = {3, 4};
        p.trials = 100;
        const auto r = smallball_experiment(y, spec, p);
        CHECK(r.estimate.frequency == 0.0);
        CHECK(r.hypothesis == HypothesisStatus::Certified);
        CHECK(r.ceiling == doctest::Approx(std::pow(8.0 * 2 / 16, 2) + 144.0 / 16 + std::pow(16.0, -0.1)));
    }
    SUBCASE("undecided between the two radii") {
        std::vector<Complex> y(n);
        for (int j = 0; j < n; ++j) y[j] = Complex(1.5 * (j % 2) + 10.0 * (j / 2), 0.0);
        SmallBallParams p;
        p.rho = 1.0;
        p.delta = 1.0 / n;
        p.trials = 10;
        const auto r = smallball_experiment(y, spec, p);
        CHECK(r.level_count == 1);
        CHECK(r.level_count_double == 2);
        CHECK(r.hypothesis == HypothesisStatus::Undecided);
    }
    SUBCASE("sum convention") {
        // y supported on one column: <y, X> = y_c when c is in the support of X.
        std::vector<Complex> y(n, 0.0);
        y[0] = 4.0;
        SmallBallParams p;
        p.rho = 0.4;
        p.lambda = 4.0;
        p.delta = 0.5;
        p.trials = 4000;
        p.seed = 9;
        const auto r = smallball_experiment(y, spec, p);
        XSampler sampler(spec);
        long long hits = 0;
        for (int t = 0; t < 4000; ++t) {
            Rng rng(9, t);
            const auto x = sampler.sample(rng);
            hits += std::find(x.support.begin(), x.support.end(), 0) != x.support.end();
        }
        CHECK(r.estimate.frequency == doctest::Approx(hits / 4000.0));
    }
}

TEST_CASE("row distances") {
    SUBCASE("i = 1 is the row norm") {
        const int n = 12, d = 3;
        const Complex z(0.4, -0.2);
        const auto recs = row_distance_experiment(n, d, z, 1, 5, 31);
        REQUIRE(recs.size() == 5);
        for (const auto& r : recs) {
            Rng rng(r.seed);
            const auto a = sample_regular(n, d, rng);
            const auto b = build_shifted(a.graph, ShiftSpec::rescaled(z, d));
            CHECK(r.distance == doctest::Approx(norm2(b.row(r.row))).epsilon(1e-12));
            const bool loop = a.graph.has_edge(r.row, r.row);
            const double expected = loop ? std::sqrt(std::norm(1.0 / std::sqrt(3.0) - z) + 2.0 / 3.0)
                                         : std::sqrt(1.0 + std::norm(z));
            CHECK(r.distance == doctest::Approx(expected).epsilon(1e-12));
            CHECK(r.threshold == doctest::Approx(std::exp(-std::pow(12.0 / 11.0, 1.0 / 288.0))));
        }
    }
    SUBCASE("all-ones matrix closed form") {
        const int n = 6;
        const Complex z(0.3, 0.2);
        const Complex c = (1.0 / std::sqrt(6.0)) / (z - std::sqrt(6.0));
        const double expected = std::abs(z) / std::sqrt(std::norm(1.0 + c) + (n - 1) * std::norm(c));
        for (const auto& r : row_distance_experiment(n, n, z, n, 3, 4)) {
            CHECK(r.distance == doctest::Approx(expected).epsilon(1e-10));
            CHECK(r.threshold == 0.0);
            CHECK_FALSE(r.violated);
        }
    }
    SUBCASE("agrees with a direct projection") {
        const int n = 30, d = 4, i = 25;
        const Complex z(0.1, 0.3);
        for (const auto& r : row_distance_experiment(n, d, z, i, 3, 8)) {
            Rng rng(r.seed);
            const auto a = sample_regular(n, d, rng);
            std::vector<int> sigma = range(0, n);
            rng.shuffle(sigma);
            const auto b = build_shifted(a.graph, ShiftSpec::rescaled(z, d));
            std::vector<ComplexVector> rows;
            for (int k = 0; k < i - 1; ++k) rows.emplace_back(b.row(sigma[k]).begin(), b.row(sigma[k]).end());
            CHECK(r.row == sigma[i - 1]);
            CHECK(r.distance == doctest::Approx(distance_to_span(b.row(r.row), rows)).epsilon(1e-10));
        }
    }
    SUBCASE("regime flag and JSON line") {
        const auto recs = row_distance_experiment(20, 2, 0.0, 19, 1, 2, 2.0, 0.5);
        const auto& r = recs.front();
        const double lo = 20.0 - 20.0 / 8.0;
        const double hi = 20.0 - 40.0 / std::pow(std::log(20.0), 2.0);
        CHECK(r.in_regime == (lo <= 19 && 19 <= hi));
        CHECK(r.threshold == doctest::Approx(std::exp(-2.0 * std::sqrt(20.0))));
        const auto j = nlohmann::json::parse(to_json_line(to_trial_record(r)));
        CHECK(j.at("experiment_id") == "row-distance");
        CHECK(j.at("seed").get<std::uint64_t>() == r.seed);
        CHECK(j.at("outcome").at("distance").get<double>() == r.distance);
        CHECK(j.at("params").at("i").get<double>() == 19.0);
        CHECK(j.contains("derived_quantities"));
    }
    CHECK_THROWS_AS(row_distance_experiment(10, 2, 0.0, 0, 1, 1), PreconditionError);
    CHECK_THROWS_AS(row_distance_experiment(10, 2, 0.0, 11, 1, 1), PreconditionError);
}

TEST_CASE("singular value bound from row distances") {
    SUBCASE("identity") {
        const auto v = sv_from_distances(1.0, 0.1, 2.0, 10, ComplexMatrix::identity(10));
        CHECK(v.violations == 0);
        CHECK(v.hypothesis);
        CHECK(v.t == 6);
        CHECK(v.s_t == doctest::Approx(1.0));
        CHECK(v.bound == doctest::Approx(std::sqrt(0.2)));
        CHECK(v.implication_holds);
    }
    SUBCASE("hand-made values") {
        const std::vector<double> svals = {5, 4, 3, 2, 1};
        const std::vector<double> dist = {1, 1, 1, 1, 0.1};
        auto v = sv_from_distances(0.5, 0.2, 1.0, 5, svals, dist);
        CHECK(v.violations == 1);
        CHECK(v.allowed == doctest::Approx(1.0));
        CHECK(v.hypothesis);
        CHECK(v.t == 3);
        CHECK(v.s_t == 3.0);
        CHECK(v.implication_holds);
        // A made-up spectrum contradicting the distances is flagged.
        const std::vector<double> bad = {5, 4, 0.01, 0.01, 0.01};
        v = sv_from_distances(0.5, 0.2, 1.0, 5, bad, dist);
        CHECK_FALSE(v.implication_holds);
        // Vacuous when t = 0.
        v = sv_from_distances(0.5, 0.2, 2.5, 5, bad, dist);
        CHECK(v.t == 0);
        CHECK(v.implication_holds);
    }
    SUBCASE("preconditions") {
        const std::vector<double> s = {1, 1};
        CHECK_THROWS_AS(sv_from_distances(1.0, 0.1, 0.5, 2, s, s), PreconditionError);
        CHECK_THROWS_AS(sv_from_distances(1.0, 0.1, 6.0, 2, s, s), PreconditionError);
        CHECK_THROWS_AS(sv_from_distances(0.0, 0.1, 1.0, 2, s, s), PreconditionError);
        CHECK_THROWS_AS(sv_from_distances(1.0, 0.1, 1.0, 3, s, s), PreconditionError);
    }
    SUBCASE("random shifted digraphs never break the implication") {
        int nonvacuous = 0;
        for (int t = 0; t < 40; ++t) {
            Rng rng(1234, t);
            const int n = 40, d = 3;
            const auto a = sample_regular(n, d, rng);
            const Complex z(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
            const auto b = build_shifted(a.graph, ShiftSpec::rescaled(z, d));
            const int m = 20 + static_cast<int>(rng.uniform_below(21));
            ComplexMatrix head(m, n);
            for (int i = 0; i < m; ++i) std::copy(b.row(i).begin(), b.row(i).end(), head.row(i).begin());
            auto dist = leave_one_out_distances(head);
            const auto svals = singular_values(b);
            auto sorted = dist;
            std::sort(sorted.begin(), sorted.end());
            const double rho = sorted[m / 10];
            const double delta = 0.1;
            for (double L : {1.0, 1.5, 2.0, 4.0}) {
                const auto v = sv_from_distances(rho, delta, L, m, svals, dist);
                CHECK(v.implication_holds);
                nonvacuous += v.hypothesis && v.t >= 1;
            }
        }
        CHECK(nonvacuous >= 40);
    }
}

TEST_CASE("hypothesis status names") {
    CHECK(to_string(HypothesisStatus::Certified) == "certified");
    CHECK(to_string(HypothesisStatus::Violated) == "violated");
    CHECK(to_string(HypothesisStatus::Undecided) == "undecided");
}

TEST_CASE("disjointness at n = 4 by enumeration and at lemma scale") {
    SUBCASE("n = 4, |I| = 1") {
        const auto m = RegularDigraph::from_rows(4, 2, {{0, 1}, {2, 3}, {0, 2}, {1, 3}});
        const std::vector<int> J = {1, 2};
        // Row 1 avoids row 0, row 2 meets it.
        const auto est = disjointness_frequency(m, J, 0, 40000, 3);
        CHECK(std::abs(est.frequency - 0.5) <= 4.0 * std::sqrt(0.25 / 40000));
        CHECK(disjointness_frequency(RegularDigraph::permutation({2, 3, 0, 1}), J, 0, 100, 3).frequency == 1.0);
    }
    SUBCASE("n = 4096, d = 4") {
        const int n = 4096;
        Rng rng(2024);
        const auto a = sample_regular(n, 4, rng);
        const auto J = range(1, n / 2 + 1);
        const auto est = disjointness_frequency(a.graph, J, 0, 2000, 17);
        CHECK(est.frequency >= 1.0 - 2.0 * std::pow(n, -0.25) - 3.0 * est.std_error);
    }
}

TEST_CASE("coupling at the documented scale") {
    Rng rng(64);
    const auto S = range(0, 64);
    long long collisions = 0;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) collisions += !coupling_sampler(S, 4, rng).distinct;
    const auto est = make_frequency(collisions, trials);
    CHECK(est.frequency <= 16.0 / 64.0 + 3.0 * est.std_error);
    for (int t = 0; t < 1000; ++t) CHECK(coupling_sampler(S, 1, rng).distinct);
}

TEST_CASE("small-ball with y = 0") {
    const int n = 16;
    const ResamplerSpec spec{RegularDigraph::circulant(n, 2), range(1, 9), 0, std::nullopt};
    const std::vector<Complex> y(n, 0.0);
    SmallBallParams p;
    p.rho = 1.0;
    p.delta = 0.25;
    p.trials = 50;
    const auto r = smallball_experiment(y, spec, p);
    CHECK(r.estimate.frequency == 1.0);
    CHECK(r.hypothesis == HypothesisStatus::Violated);
}

TEST_CASE("row distances at n = 400 against the step-one curve") {
    // The lemma's constant C is unspecified; the frequency is compared with
    // C (n - i)/n along a grid of C, and must not increase with C.
    const int n = 400, d = 8, i = n - 20;
    const auto recs = row_distance_experiment(n, d, Complex(0.3, 0.1), i, 200, 400);
    double previous = 1.0;
    for (double C : {1.0, 4.0, 16.0}) {
        const double threshold = std::exp(-C * std::pow(static_cast<double>(n) / (n - i), 1.0 / 288.0));
        long long violated = 0;
        for (const auto& r : recs) {
            CHECK(r.distance > 0.0);
            if (C == 1.0) CHECK(r.violated == (r.distance < r.threshold));
            violated += r.distance < threshold;
        }
        const auto est = make_frequency(violated, 200);
        MESSAGE("C = " << C << ": violation frequency " << est.frequency << ", curve " << C * (n - i) / n);
        CHECK(est.frequency <= previous);
        previous = est.frequency;
        if (C == 16.0) CHECK(est.frequency <= C * (n - i) / n);
    }
}
