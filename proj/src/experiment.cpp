#include "regspec/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <json.hpp>
#include <map>
#include <numeric>
#include <sstream>

#include "regspec/anticoncentration.hpp"
#include "regspec/format.hpp"
#include "regspec/gaussian_normals.hpp"
#include "regspec/hermitization.hpp"
#include "regspec/parallel.hpp"
#include "regspec/projection.hpp"
#include "regspec/regular_digraph.hpp"
#include "regspec/rng.hpp"
#include "regspec/spectra.hpp"
#include "regspec/statistics.hpp"
#include "regspec/svg.hpp"

namespace regspec {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string fmt(double x) { return format_double(x); }
std::string fmt(bool b) { return b ? "1" : "0"; }

std::string padded(int t) {
    std::string s = std::to_string(t);
    return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

/// In-memory artifact set, committed all at once.
class Artifacts {
public:
    void add(const std::string& name, std::string contents) {
        require(files_.emplace(name, std::move(contents)).second, "duplicate artifact " + name);
    }
    void add_plot(const std::string& stem, const Plot& plot) {
        add(stem + ".svg", plot.svg);
        add(stem + ".csv", plot.csv);
    }
    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [name, contents] : files_) out.push_back(name);
        return out;
    }
    const std::map<std::string, std::string>& files() const { return files_; }

private:
    std::map<std::string, std::string> files_;
};

void commit(const Artifacts& artifacts, const fs::path& dir) {
    std::vector<fs::path> written;
    try {
        fs::create_directories(dir);
        for (const auto& [name, contents] : artifacts.files()) {
            const auto path = dir / name;
            write_file_atomic(path.string(), contents);
            written.push_back(path);
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        for (const auto& [name, contents] : artifacts.files()) fs::remove(dir / (name + ".tmp"), ec);
        throw;
    }
}

struct Context {
    const ExperimentConfig& cfg;
    Artifacts artifacts;
    RunRecord record;
    Json extra = Json::object();  ///< kind-specific summary merged into run.json
};

SampledDigraph sample_for_trial(const ExperimentConfig& cfg, Rng& rng) {
    SamplerOptions options;
    options.kind = cfg.sampler;
    options.burn_in_factor = cfg.burn_in_factor;
    return sample_regular(cfg.n, cfg.d, rng, options);
}

void count_samples(Context& ctx, bool exact) { (exact ? ctx.record.exact_samples : ctx.record.approximate_samples) += 1; }

ReferenceLaw overlay_law(const ExperimentConfig& cfg) {
    return cfg.overlay == "kesten-mckay" ? ReferenceLaw::kesten_mckay(cfg.d) : ReferenceLaw::circular();
}

// ---------------------------------------------------------------- sample

void run_sample(Context& ctx) {
    const auto& cfg = ctx.cfg;
    struct Out {
        std::string text;
        bool exact;
    };
    const auto outs = parallel_map(cfg.trials, cfg.threads, [&](int t) {
        Rng rng(cfg.master_seed, static_cast<std::uint64_t>(t));
        const auto s = sample_for_trial(cfg, rng);
        return Out{to_text(s.graph), s.exact};
    });
    std::string csv = "trial,seed,exact,file\n";
    for (int t = 0; t < cfg.trials; ++t) {
        const std::string file = "matrix_" + padded(t) + ".txt";
        ctx.artifacts.add(file, outs[t].text);
        csv += std::to_string(t) + "," + std::to_string(ctx.record.trial_seeds[t]) + "," + fmt(outs[t].exact) + "," +
               file + "\n";
        count_samples(ctx, outs[t].exact);
    }
    ctx.artifacts.add("samples.csv", csv);
}

// ---------------------------------------------------------------- spectrum

void run_spectrum(Context& ctx) {
    const auto& cfg = ctx.cfg;
    struct Out {
        SpectralSummary summary;
        int d;
        bool exact;
    };
    std::vector<Out> outs;
    if (!cfg.matrix.empty()) {
        RegularDigraph m = RegularDigraph::circulant(1, 1);
        try {
            m = from_text(read_file(cfg.matrix));
        } catch (const Error& e) {
            throw ConfigError(std::string("matrix file: ") + e.what());
        }
        ctx.extra["matrix_hash"] = hex64([&] {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (unsigned char ch : to_text(m)) h = (h ^ ch) * 0x100000001b3ULL;
            return h;
        }());
        outs.push_back({summarize_spectrum(build_shifted(m, {Complex(0.0, 0.0), 1.0})), m.d(), true});
    } else {
        outs = parallel_map(cfg.trials, cfg.threads, [&](int t) {
            Rng rng(cfg.master_seed, static_cast<std::uint64_t>(t));
            const auto s = sample_for_trial(cfg, rng);
            return Out{summarize_spectrum(build_shifted(s.graph, {Complex(0.0, 0.0), 1.0})), cfg.d, s.exact};
        });
    }
    for (std::size_t t = 0; t < outs.size(); ++t) {
        const auto stem = "spectrum_" + padded(static_cast<int>(t));
        ctx.artifacts.add(stem + ".csv", to_csv(outs[t].summary));
        ctx.artifacts.add_plot(stem + "_scatter",
                               render_scatter(outs[t].summary.eigenvalues, std::sqrt(static_cast<double>(outs[t].d)),
                                              "eigenvalues of A, trial " + std::to_string(t)));
        count_samples(ctx, outs[t].exact);
    }
}

// ---------------------------------------------------------------- circular-law

void run_circular_law(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const auto law = overlay_law(cfg);
    struct Out {
        std::vector<Complex> eigs;
        double radial = 0.0;
        double angular = 0.0;
        double inside = 0.0;
        std::vector<LogPotential> potentials;
        bool exact = true;
    };
    const auto outs = parallel_map(cfg.trials, cfg.threads, [&](int t) {
        Rng rng(cfg.master_seed, static_cast<std::uint64_t>(t));
        const auto s = sample_for_trial(cfg, rng);
        Out o;
        o.exact = s.exact;
        o.eigs = eigenvalues(build_shifted(s.graph, ShiftSpec::rescaled(0.0, cfg.d)));
        const auto mu = esd(o.eigs);
        o.radial = radial_cdf_distance(mu, law);
        o.angular = angular_ks_distance(mu);
        o.inside = static_cast<double>(std::count_if(o.eigs.begin(), o.eigs.end(),
                                                     [](Complex l) { return std::abs(l) <= 1.1; })) /
                   static_cast<double>(o.eigs.size());
        for (const auto& z : cfg.z_grid) {
            const auto sv = singular_values(build_shifted(s.graph, ShiftSpec::rescaled(z, cfg.d)));
            o.potentials.push_back(log_potential_empirical(sv, cfg.floor));
        }
        return o;
    });

    std::string csv = "trial,seed,exact,radial_cdf_distance,angular_ks_distance,fraction_within_1.1\n";
    std::vector<double> radial, inside;
    std::vector<Complex> pooled;
    for (int t = 0; t < cfg.trials; ++t) {
        const auto& o = outs[t];
        csv += std::to_string(t) + "," + std::to_string(ctx.record.trial_seeds[t]) + "," + fmt(o.exact) + "," +
               fmt(o.radial) + "," + fmt(o.angular) + "," + fmt(o.inside) + "\n";
        radial.push_back(o.radial);
        inside.push_back(o.inside);
        pooled.insert(pooled.end(), o.eigs.begin(), o.eigs.end());
        count_samples(ctx, o.exact);
    }
    ctx.artifacts.add("circular_law.csv", csv);

    std::string pot = "re_z,im_z,U_empirical,U_empirical_stderr,U_circular,floored_count\n";
    for (std::size_t k = 0; k < cfg.z_grid.size(); ++k) {
        std::vector<double> values;
        long long floored = 0;
        for (const auto& o : outs) {
            values.push_back(o.potentials[k].value);
            floored += o.potentials[k].floored_count;
        }
        const auto s = summarize(values);
        const auto z = cfg.z_grid[k];
        pot += fmt(z.real()) + "," + fmt(z.imag()) + "," + fmt(s.mean) + "," + fmt(s.std_error) + "," +
               fmt(log_potential_circular(z)) + "," + std::to_string(floored) + "\n";
    }
    ctx.artifacts.add("potential.csv", pot);

    const auto pooled_mu = esd(pooled);
    ctx.artifacts.add_plot("scatter", render_scatter(pooled, 1.0, "eigenvalues of d^-1/2 A, pooled over trials"));
    ctx.artifacts.add_plot("radial_cdf", render_radial_cdf(pooled_mu, law, "radial CDF vs " + law.name()));
    const auto rs = summarize(radial);
    const auto is = summarize(inside);
    ctx.extra["mean_radial_cdf_distance"] = rs.mean;
    ctx.extra["radial_cdf_distance_stderr"] = rs.std_error;
    ctx.extra["mean_fraction_within_1.1"] = is.mean;
    ctx.extra["pooled_radial_cdf_distance"] = radial_cdf_distance(pooled_mu, law);
}

// ---------------------------------------------------------------- sv-regimes

void run_sv_regimes(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const BoundKnobs knobs{cfg.C, cfg.c};
    struct PerZ {
        std::vector<double> sv;
        TailReport tail;
        SvBoundReport bounds;
    };
    struct Out {
        std::vector<PerZ> per_z;
        bool exact = true;
    };
    const auto outs = parallel_map(cfg.trials, cfg.threads, [&](int t) {
        Rng rng(cfg.master_seed, static_cast<std::uint64_t>(t));
        const auto s = sample_for_trial(cfg, rng);
        Out o;
        o.exact = s.exact;
        for (const auto& z : cfg.z_grid) {
            PerZ p;
            p.sv = singular_values(build_shifted(s.graph, ShiftSpec::rescaled(z, cfg.d)));
            const double floor = singular_value_floor(p.sv, cfg.n, cfg.n);
            p.tail = tail_log_sum(p.sv, cfg.T, cfg.d, cfg.C);
            p.bounds = sv_bound_check(p.sv, cfg.d, z, knobs, floor);
            o.per_z.push_back(std::move(p));
        }
        return o;
    });

    std::string regimes =
        "trial,re_z,im_z,T,tail_sum,large_sum,I1_sum,I2_sum,I3_sum,I4_sum,I1_count,I2_count,I3_count,I4_count";
    for (const char* b : {"smin", "cook_anti", "inter_sv"})
        for (const char* f : {"applicable", "pass", "resolved", "k_lo", "k_hi", "tightest_k", "margin"})
            regimes += std::string(",") + b + "_" + f;
    regimes += "\n";
    std::string profile = "trial,z_index,k,s_k\n";
    auto check_cols = [](const BoundCheck& c) {
        return "," + fmt(c.applicable) + "," + fmt(c.pass) + "," + fmt(c.resolved) + "," + std::to_string(c.k_lo) +
               "," + std::to_string(c.k_hi) + "," + std::to_string(c.tightest_k) + "," + fmt(c.margin);
    };
    for (int t = 0; t < cfg.trials; ++t) {
        for (std::size_t k = 0; k < cfg.z_grid.size(); ++k) {
            const auto& p = outs[t].per_z[k];
            const auto z = cfg.z_grid[k];
            regimes += std::to_string(t) + "," + fmt(z.real()) + "," + fmt(z.imag()) + "," + fmt(cfg.T) + "," +
                       fmt(p.tail.tail_sum) + "," + fmt(p.tail.large_sum);
            for (int r = 0; r < 4; ++r) regimes += "," + fmt(p.tail.regime_sum[r]);
            for (int r = 0; r < 4; ++r) regimes += "," + std::to_string(p.tail.regime_indices[r].size());
            regimes += check_cols(p.bounds.smin) + check_cols(p.bounds.cook_anti) + check_cols(p.bounds.inter_sv);
            regimes += "\n";
            for (std::size_t i = 0; i < p.sv.size(); ++i)
                profile += std::to_string(t) + "," + std::to_string(k) + "," + std::to_string(i + 1) + "," +
                           fmt(p.sv[i]) + "\n";
        }
        count_samples(ctx, outs[t].exact);
    }
    ctx.artifacts.add("regimes.csv", regimes);
    ctx.artifacts.add("sv_profile_table.csv", profile);
    const auto& first = outs.front().per_z.front();
    ctx.artifacts.add_plot("sv_profile",
                           render_sv_profile(first.sv, sv_bound_curves(cfg.n, cfg.d, first.bounds, knobs),
                                             "singular values of B_z, trial 0, z = " + format_complex(cfg.z_grid[0])));
}

// ---------------------------------------------------------------- normals

void run_normals(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int span = cfg.span_rows > 0 ? cfg.span_rows : cfg.n / 2;
    struct Out {
        int m = 0;
        StructureLabel label;
        std::size_t clusters = 0;
        std::size_t largest = 0;
        double top = 0.0;
        double bottom = 0.0;
        std::vector<ExperimentRecord> records;
        bool exact = true;
    };
    const auto outs = parallel_map(cfg.trials, cfg.threads, [&](int t) {
        Rng rng(cfg.master_seed, static_cast<std::uint64_t>(t));
        const auto s = sample_for_trial(cfg, rng);
        const auto b = build_shifted(s.graph, ShiftSpec::rescaled(cfg.z_grid[0], cfg.d));
        OrthonormalBasis e(cfg.n);
        for (int i = 0; i < span; ++i) e.add(b.row(i));
        Out o;
        o.exact = s.exact;
        o.m = cfg.n - e.rank();
        const auto y = random_normal(e, sample_gaussian(cfg.n, rng));
        const auto xs = order_statistics(y);
        o.top = xs.front();
        o.bottom = xs.back();
        o.label = classify_normal(y, o.m, cfg.a, cfg.gamma);
        const auto cl = build_clusters(e, cfg.alpha, cfg.beta);
        o.clusters = cl.clusters.size();
        for (const auto& c : cl.clusters) o.largest = std::max(o.largest, c.size());
        o.records = orderstat_experiments(e, 1, rng.next_u64());
        return o;
    });

    std::string csv =
        "trial,seed,exact,m,kind,steep_index,decay_margin,level_radius,level_limit,level_count,level_count_double,"
        "undecided_level,clusters,largest_cluster,max_modulus,min_modulus\n";
    // Aggregate the per-trial indicator records by (lemma, params).
    std::map<std::string, std::pair<ExperimentRecord, long long>> merged;
    std::vector<std::string> order;
    for (int t = 0; t < cfg.trials; ++t) {
        const auto& o = outs[t];
        const auto& l = o.label;
        csv += std::to_string(t) + "," + std::to_string(ctx.record.trial_seeds[t]) + "," + fmt(o.exact) + "," +
               std::to_string(o.m) + "," + to_string(l.kind) + "," + std::to_string(l.steep_index) + "," +
               fmt(l.decay_margin) + "," + fmt(l.level_radius) + "," + fmt(l.level_limit) + "," +
               std::to_string(l.level_count) + "," + std::to_string(l.level_count_double) + "," +
               fmt(l.undecided_level) + "," + std::to_string(o.clusters) + "," + std::to_string(o.largest) + "," +
               fmt(o.top) + "," + fmt(o.bottom) + "\n";
        for (const auto& r : o.records) {
            ExperimentRecord key = r;
            key.empirical_freq = key.std_error = 0.0;
            key.n_trials = 0;
            const auto k = to_json(key);
            auto it = merged.find(k);
            if (it == merged.end()) {
                it = merged.emplace(k, std::make_pair(key, 0LL)).first;
                order.push_back(k);
            }
            it->second.first.n_trials += 1;
            it->second.second += r.empirical_freq > 0.0 ? 1 : 0;
        }
        count_samples(ctx, o.exact);
    }
    ctx.artifacts.add("normals.csv", csv);
    std::string lines;
    for (const auto& k : order) {
        auto [r, hits] = merged.at(k);
        const auto f = make_frequency(hits, r.n_trials);
        r.empirical_freq = f.frequency;
        r.std_error = f.std_error;
        lines += to_json(r) + "\n";
    }
    ctx.artifacts.add("orderstat.jsonl", lines);
}

// ---------------------------------------------------------------- anticonc

void run_anticonc(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n;
    const int d = cfg.d;
    const Complex z = cfg.z_grid[0];
    std::vector<int> J;
    for (int j = 0; static_cast<int>(J.size()) < (n + 1) / 2; ++j)
        if (j != cfg.u) J.push_back(j);
    const int row_i = cfg.row_index > 0 ? cfg.row_index : n - std::max(1, n / 20);
    const double rho = cfg.rho > 0.0 ? cfg.rho : 1.0 / std::sqrt(static_cast<double>(n));
    const double L = cfg.L > 0.0
                         ? cfg.L
                         : std::clamp(1.0 / (2.0 * std::sqrt(cfg.C * cfg.delta)), 1.0, 1.0 / (2.0 * cfg.delta));

    struct Out {
        std::vector<TrialRecord> records;
        bool disjoint = false;
        bool small_ball = false;
        bool collision = false;
        double coupling_bound = 0.0;
        HypothesisStatus hypothesis = HypothesisStatus::Undecided;
        DistanceRecord distance;
        SvFromDistancesVerdict verdict;
        bool exact_x = true;
        bool exact = true;
    };
    const auto outs = parallel_map(cfg.trials, cfg.threads, [&](int t) {
        const auto seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
        Rng rng(seed);
        const auto s = sample_for_trial(cfg, rng);
        const auto b = build_shifted(s.graph, ShiftSpec::rescaled(z, d));
        Out o;
        o.exact = s.exact;

        // y: unit random normal to the rows of B_z outside J and u.
        OrthonormalBasis e(n);
        std::vector<bool> in_j(n, false);
        for (int j : J) in_j[j] = true;
        for (int i = 0; i < n; ++i)
            if (!in_j[i] && i != cfg.u) e.add(b.row(i));
        auto y = random_normal(e, sample_gaussian(n, rng));
        const double norm = norm2(y);
        for (auto& v : y) v /= norm;

        XSampler sampler(ResamplerSpec{s.graph, J, cfg.u, std::nullopt});
        const auto x = sampler.sample(rng);
        o.exact_x = x.exact;
        std::vector<int> rows = x.I0;
        rows.push_back(cfg.u);
        o.disjoint = supports_pairwise_disjoint(s.graph, rows);
        Complex ip{0.0, 0.0};
        for (int j : x.support) ip += y[j];
        o.small_ball = std::abs(ip - cfg.lambda) <= rho / 4.0;
        const auto profile = level_count(y, rho);
        if (profile.count_double <= cfg.delta * n)
            o.hypothesis = HypothesisStatus::Certified;
        else if (profile.count > cfg.delta * n)
            o.hypothesis = HypothesisStatus::Violated;

        const auto S = support_union(s.graph, rows);
        const auto draw = coupling_sampler(S, d, rng);
        o.collision = !draw.distinct;
        o.coupling_bound = static_cast<double>(d) * d / static_cast<double>(S.size());

        o.distance = row_distance_experiment(n, d, z, row_i, 1, seed, cfg.C, cfg.gamma).front();

        const auto distances = leave_one_out_distances(b);
        const auto sv = singular_values(b);
        auto sorted = distances;
        std::sort(sorted.begin(), sorted.end());
        // rho for the implication: a low quantile of the distances, so the premise is live.
        const auto q = static_cast<std::size_t>(std::floor(cfg.delta * L * n / 2.0));
        const double rho_sv = sorted[std::min(q, sorted.size() - 1)];
        o.verdict = sv_from_distances(std::max(rho_sv, 1e-300), cfg.delta, L, n, sv, distances);

        const std::map<std::string, double> base = {{"n", double(n)}, {"d", double(d)}, {"trial", double(t)}};
        auto rec = [&](const std::string& id, std::map<std::string, double> params, std::map<std::string, double> out,
                       std::map<std::string, double> derived) {
            params.insert(base.begin(), base.end());
            o.records.push_back({id, std::move(params), seed, std::move(out), std::move(derived)});
        };
        rec("disjointness", {{"I_size", double(x.I0.size())}}, {{"disjoint", o.disjoint ? 1.0 : 0.0}},
            {{"ceiling_failure", 2.0 * std::pow(n, -0.25)}});
        rec("small-ball", {{"rho", rho}, {"delta", cfg.delta}, {"re_lambda", cfg.lambda.real()},
                           {"im_lambda", cfg.lambda.imag()}},
            {{"hit", o.small_ball ? 1.0 : 0.0}, {"re_inner", ip.real()}, {"im_inner", ip.imag()}},
            {{"level_count", double(profile.count)}, {"level_count_double", double(profile.count_double)},
             {"hypothesis_certified", o.hypothesis == HypothesisStatus::Certified ? 1.0 : 0.0},
             {"hypothesis_violated", o.hypothesis == HypothesisStatus::Violated ? 1.0 : 0.0},
             {"exact_x", x.exact ? 1.0 : 0.0}});
        rec("coupling", {{"S_size", double(S.size())}}, {{"collision", o.collision ? 1.0 : 0.0}},
            {{"bound", o.coupling_bound}});
        auto dist = to_trial_record(o.distance);
        dist.params.insert({"trial", double(t)});
        o.records.push_back(dist);
        rec("sv-from-distances", {{"rho", rho_sv}, {"delta", cfg.delta}, {"L", L}},
            {{"implication_holds", o.verdict.implication_holds ? 1.0 : 0.0},
             {"hypothesis", o.verdict.hypothesis ? 1.0 : 0.0}},
            {{"t", double(o.verdict.t)}, {"violations", double(o.verdict.violations)},
             {"allowed", o.verdict.allowed}, {"bound", o.verdict.bound}, {"s_t", o.verdict.s_t}});
        return o;
    });

    std::string lines;
    long long disjoint = 0, small = 0, collisions = 0, violated = 0, implication_failures = 0, certified = 0,
              approx_x = 0;
    double coupling_bound = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
        const auto& o = outs[t];
        for (const auto& r : o.records) lines += to_json_line(r) + "\n";
        disjoint += o.disjoint;
        small += o.small_ball;
        collisions += o.collision;
        violated += o.distance.violated;
        implication_failures += !o.verdict.implication_holds;
        certified += o.hypothesis == HypothesisStatus::Certified;
        approx_x += !o.exact_x;
        coupling_bound = std::max(coupling_bound, o.coupling_bound);
        count_samples(ctx, o.exact);
    }
    ctx.artifacts.add("anticonc.jsonl", lines);

    const double nn = n;
    const double step_i = row_i < n ? cfg.C * (n - row_i) / nn : 1.0;
    std::string csv = "experiment,frequency,stderr,trials,reference,relation\n";
    auto row = [&](const std::string& id, long long hits, double reference, const std::string& relation) {
        const auto f = make_frequency(hits, cfg.trials);
        csv += id + "," + fmt(f.frequency) + "," + fmt(f.std_error) + "," + std::to_string(cfg.trials) + "," +
               fmt(reference) + "," + relation + "\n";
    };
    row("disjointness", disjoint, 1.0 - 2.0 * std::pow(nn, -0.25), ">=");
    row("small-ball", small, 144.0 * cfg.delta + std::pow(nn, -0.1), "<=");
    row("small-ball-hypothesis-certified", certified, 1.0, "report");
    row("coupling-collision", collisions, coupling_bound, "<=");
    row("row-distance-violation", violated, step_i, "<=");
    row("sv-from-distances-failure", implication_failures, 0.0, "==");
    row("approximate-x-draws", approx_x, 0.0, "report");
    ctx.artifacts.add("anticonc.csv", csv);
    ctx.extra["implication_failures"] = implication_failures;
}

// ---------------------------------------------------------------- report

void run_report(Context& ctx) {
    const auto& cfg = ctx.cfg;
    Json runs = Json::array();
    std::string csv = "input,kind,config_hash,trials,exact_samples,approximate_samples,outputs\n";
    for (const auto& input : cfg.inputs) {
        Json j;
        try {
            j = Json::parse(read_file((fs::path(input) / "run.json").string()));
        } catch (const std::exception& e) {
            throw ConfigError("report input " + input + ": " + e.what());
        }
        csv += input + "," + j.value("kind", std::string()) + "," + j.value("config_hash", std::string()) + "," +
               std::to_string(j.contains("trial_seeds") ? j["trial_seeds"].size() : 0) + "," +
               std::to_string(j.value("exact_samples", 0LL)) + "," + std::to_string(j.value("approximate_samples", 0LL)) +
               "," + std::to_string(j.contains("outputs") ? j["outputs"].size() : 0) + "\n";
        Json entry;
        entry["input"] = input;
        entry["run"] = j;
        runs.push_back(entry);
    }
    ctx.artifacts.add("report.csv", csv);
    ctx.artifacts.add("report.json", runs.dump(2) + "\n");
}

}  // namespace

RunRecord run(const ExperimentConfig& config, const std::string& out_dir) {
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    Context ctx{config, {}, {}};
    ctx.record.kind = to_string(config.kind);
    ctx.record.config_hash = config.hash();
    if (config.kind != ExperimentKind::Report && !(config.kind == ExperimentKind::Spectrum && !config.matrix.empty()))
        for (int t = 0; t < config.trials; ++t)
            ctx.record.trial_seeds.push_back(derive_seed(config.master_seed, static_cast<std::uint64_t>(t)));

    switch (config.kind) {
        case ExperimentKind::Sample:
            run_sample(ctx);
            break;
        case ExperimentKind::Spectrum:
            run_spectrum(ctx);
            break;
        case ExperimentKind::CircularLaw:
            run_circular_law(ctx);
            break;
        case ExperimentKind::SvRegimes:
            run_sv_regimes(ctx);
            break;
        case ExperimentKind::Normals:
            run_normals(ctx);
            break;
        case ExperimentKind::Anticonc:
            run_anticonc(ctx);
            break;
        case ExperimentKind::Report:
            run_report(ctx);
            break;
    }

    ctx.record.outputs = ctx.artifacts.names();
    ctx.record.outputs.push_back("run.json");
    std::sort(ctx.record.outputs.begin(), ctx.record.outputs.end());

    Json j;
    j["version"] = ctx.record.version;
    j["kind"] = ctx.record.kind;
    j["config_hash"] = hex64(ctx.record.config_hash);
    Json cfg_json = Json::object();
    {
        std::istringstream in(config.canonical());
        std::string line;
        while (std::getline(in, line)) {
            const auto eq = line.find('=');
            cfg_json[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    j["config"] = cfg_json;
    j["master_seed"] = config.master_seed;
    j["trial_seeds"] = ctx.record.trial_seeds;
    j["exact_samples"] = ctx.record.exact_samples;
    j["approximate_samples"] = ctx.record.approximate_samples;
    j["outputs"] = ctx.record.outputs;
    j["summary"] = ctx.extra;
    ctx.artifacts.add("run.json", j.dump(2) + "\n");

    ctx.record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string log = "kind=" + ctx.record.kind + "\nconfig_hash=" + hex64(ctx.record.config_hash) +
                      "\nthreads=" + std::to_string(resolve_threads(config.threads)) +
                      "\nwall_seconds=" + format_double(ctx.record.wall_seconds) + "\n";
    ctx.artifacts.add("run.log", log);
    commit(ctx.artifacts, out_dir);
    return ctx.record;
}

}  // namespace regspec
