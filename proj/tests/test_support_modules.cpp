#include "doctest_main.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "regspec/config.hpp"
#include "regspec/parallel.hpp"
#include "regspec/statistics.hpp"

using namespace regspec;

TEST_CASE("summaries") {
    const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
    const auto s = summarize(v);
    CHECK(s.count == 4);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(summarize(std::vector<double>{}).count == 0);
    CHECK(summarize(std::vector<double>{7.0}).std_error == 0.0);
}

TEST_CASE("chi-square tail") {
    // dof 2: the upper tail is exp(-x/2).
    for (double x : {0.5, 1.0, 3.0, 10.0}) CHECK(chi_square_sf(x, 2.0) == doctest::Approx(std::exp(-x / 2.0)));
    // dof 1: P{Z^2 > x} = erfc(sqrt(x/2)).
    for (double x : {0.1, 1.0, 4.0}) CHECK(chi_square_sf(x, 1.0) == doctest::Approx(std::erfc(std::sqrt(x / 2.0))));
    CHECK(chi_square_sf(0.0, 3.0) == 1.0);

    const std::vector<double> flat = {100, 100, 100, 100};
    CHECK(chi_square_uniform_pvalue(flat) == doctest::Approx(1.0));
    const std::vector<double> skew = {400, 0, 0, 0};
    CHECK(chi_square_uniform_pvalue(skew) < 1e-10);
    const std::vector<double> obs = {30, 70};
    const std::vector<double> expected = {0.3, 0.7};
    CHECK(chi_square_pvalue(obs, expected) == doctest::Approx(1.0));
    CHECK_THROWS_AS(chi_square_pvalue(obs, std::vector<double>{1.0}), PreconditionError);
}

TEST_CASE("total variation") {
    const std::vector<double> p = {1, 1, 2};
    const std::vector<double> q = {2, 2, 4};
    CHECK(total_variation(p, q) == doctest::Approx(0.0));
    CHECK(total_variation(std::vector<double>{1, 0}, std::vector<double>{0, 1}) == doctest::Approx(1.0));
}

TEST_CASE("parallel_map is ordered and thread-count independent") {
    auto task = [](int t) {
        double acc = 0.0;
        for (int k = 1; k <= 1000 + t; ++k) acc += std::sin(k * 0.001 * (t + 1));
        return acc;
    };
    const auto one = parallel_map(50, 1, task);
    for (int threads : {2, 3, 8}) CHECK(parallel_map(50, threads, task) == one);
    for (int t = 0; t < 50; ++t) CHECK(one[t] == task(t));
    CHECK(parallel_map(0, 4, task).empty());
}

TEST_CASE("parallel_map rethrows the lowest failing index") {
    auto task = [](int t) -> int {
        if (t == 7 || t == 30) throw std::runtime_error("task " + std::to_string(t));
        return t;
    };
    for (int threads : {1, 4}) {
        try {
            parallel_map(40, threads, task);
            FAIL("expected an exception");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "task 7");
        }
    }
}

TEST_CASE("resolve_threads") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
    CHECK_THROWS_AS(resolve_threads(-1), PreconditionError);
}

TEST_CASE("complex number parsing") {
    CHECK(parse_complex("1.5") == Complex(1.5, 0));
    CHECK(parse_complex("-2i") == Complex(0, -2));
    CHECK(parse_complex("0.3-0.4i") == Complex(0.3, -0.4));
    CHECK(parse_complex("0.3 + 0.4i") == Complex(0.3, 0.4));
    CHECK(parse_complex("i") == Complex(0, 1));
    CHECK(parse_complex("-i") == Complex(0, -1));
    CHECK(parse_complex("2+i") == Complex(2, 1));
    CHECK(parse_complex("1e-3i") == Complex(0, 1e-3));
    CHECK(parse_complex("1e-3-2e+1i") == Complex(1e-3, -20));
    CHECK(parse_complex("+4") == Complex(4, 0));
    CHECK_THROWS_AS(parse_complex("abc"), ConfigError);
    CHECK_THROWS_AS(parse_complex("1+2j"), ConfigError);
    for (Complex z : {Complex(0.3, -0.4), Complex(1, 0), Complex(0, 2.5), Complex(-1e-7, 3)})
        CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("config parsing") {
    const std::string text =
        "# comment\n"
        "schema_version = 1\n"
        "n = 500   # trailing comment\n"
        "d = 12\n"
        "z_grid = 0.3, 0.8i, 1.5-0.2i\n"
        "trials = 5\n"
        "master_seed = 18446744073709551615\n"
        "sampler = switch-chain\n"
        "gamma = 0.01\n";
    const auto cfg = parse_config(text);
    CHECK(cfg.n == 500);
    CHECK(cfg.d == 12);
    REQUIRE(cfg.z_grid.size() == 3);
    CHECK(cfg.z_grid[1] == Complex(0, 0.8));
    CHECK(cfg.trials == 5);
    CHECK(cfg.master_seed == 18446744073709551615ULL);
    CHECK(cfg.sampler == SamplerKind::SwitchChain);
    CHECK(cfg.gamma == 0.01);
    CHECK_FALSE(cfg.kind_declared);
    CHECK_NOTHROW(cfg.validate());

    SUBCASE("errors") {
        CHECK_THROWS_AS(parse_config("schema_version = 1\nnn = 5\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nn = 5\nn = 6\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("n = 5\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nn = five\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nn 5\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nkind = spectra\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nz_grid = 1,,2\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nC = inf\n"), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 2\nn = 4\nd = 2\n").validate(), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nn = 4\nd = 5\n").validate(), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nn = 4\nd = 2\ntrials = 0\n").validate(), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nn = 4\nd = 2\nbeta = 0.7\n").validate(), ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nn = 40\nd = 2\ndelta = 0.1\nL = 6\n").validate(),
                        ConfigError);
        CHECK_THROWS_AS(parse_config("schema_version = 1\nkind = report\n").validate(), ConfigError);
    }
    SUBCASE("error messages carry the line number") {
        try {
            parse_config("schema_version = 1\n\nbogus = 1\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("hash") {
        auto other = cfg;
        CHECK(other.hash() == cfg.hash());
        other.threads = 8;
        CHECK(other.hash() == cfg.hash());
        other.trials = 6;
        CHECK(other.hash() != cfg.hash());
        // canonical() reparses to the same configuration.
        const auto again = parse_config(cfg.canonical());
        CHECK(again.hash() == cfg.hash());
        CHECK(hex64(0x0123456789abcdefULL) == "0123456789abcdef");
    }
}

TEST_CASE("kind names round-trip") {
    for (auto k : {ExperimentKind::Sample, ExperimentKind::Spectrum, ExperimentKind::CircularLaw,
                   ExperimentKind::SvRegimes, ExperimentKind::Normals, ExperimentKind::Anticonc,
                   ExperimentKind::Report})
        CHECK(parse_kind(to_string(k)) == k);
}
