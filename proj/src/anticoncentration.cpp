#include "regspec/anticoncentration.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <numeric>

#include "regspec/errors.hpp"
#include "regspec/gaussian_normals.hpp"
#include "regspec/hermitization.hpp"
#include "regspec/projection.hpp"
#include "regspec/spectra.hpp"

namespace regspec {

int quarter_root(int n) {
    require(n >= 0, "quarter_root needs n >= 0");
    auto fourth = [](long long k) { return k * k * k * k; };
    long long k = static_cast<long long>(std::pow(static_cast<double>(n), 0.25));
    while (k > 0 && fourth(k) > n) --k;
    while (fourth(k + 1) <= n) ++k;
    return static_cast<int>(k);
}

std::vector<int> sample_I(const std::vector<int>& J, int n, Rng& rng) {
    const int k = quarter_root(n);
    require(static_cast<int>(J.size()) >= k, "J is smaller than floor(n^{1/4})");
    std::vector<int> pool = J;
    for (int s = 0; s < k; ++s) {
        const auto j = s + static_cast<std::size_t>(rng.uniform_below(pool.size() - s));
        std::swap(pool[s], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<int> sample_I(const std::vector<int>& J, int n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_I(J, n, rng);
}

std::vector<int> support_union(const RegularDigraph& m, const std::vector<int>& rows) {
    std::vector<int> out;
    for (int r : rows) {
        require(r >= 0 && r < m.n(), "row index out of range");
        const auto s = m.row_support(r);
        out.insert(out.end(), s.begin(), s.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool supports_pairwise_disjoint(const RegularDigraph& m, const std::vector<int>& rows) {
    std::vector<int> distinct = rows;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    return support_union(m, distinct).size() == distinct.size() * static_cast<std::size_t>(m.d());
}

FrequencyEstimate make_frequency(long long hits, long long trials) {
    FrequencyEstimate f;
    f.trials = trials;
    if (trials > 0) {
        f.frequency = static_cast<double>(hits) / static_cast<double>(trials);
        f.std_error = std::sqrt(f.frequency * (1.0 - f.frequency) / static_cast<double>(trials));
    }
    return f;
}

namespace {

void check_row_set(const RegularDigraph& m, const std::vector<int>& J, int u) {
    require(u >= 0 && u < m.n(), "u out of range");
    for (int j : J) require(j >= 0 && j < m.n(), "J index out of range");
    require(std::find(J.begin(), J.end(), u) == J.end(), "u must not belong to J");
}

std::vector<int> with_u(std::vector<int> I0, int u) {
    I0.push_back(u);
    std::sort(I0.begin(), I0.end());
    return I0;
}

}  // namespace

FrequencyEstimate disjointness_frequency(const RegularDigraph& m, const std::vector<int>& J, int u, int trials,
                                         std::uint64_t seed) {
    check_row_set(m, J, u);
    require(trials >= 1, "trials must be positive");
    long long hits = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(seed, static_cast<std::uint64_t>(t));
        hits += supports_pairwise_disjoint(m, with_u(sample_I(J, m.n(), rng), u));
    }
    return make_frequency(hits, trials);
}

void ResamplerSpec::validate() const {
    check_row_set(m, J, u);
    {
        auto sorted = J;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "J has repeated indices");
    }
    require(2 * static_cast<long long>(J.size()) >= m.n(), "|J| must be at least n/2");
    require(static_cast<int>(J.size()) >= quarter_root(m.n()), "J is smaller than floor(n^{1/4})");
    if (I0) {
        for (int i : *I0) require(std::find(J.begin(), J.end(), i) != J.end(), "I0 must be a subset of J");
    }
}

XSampler::XSampler(ResamplerSpec spec, XOptions options) : spec_(std::move(spec)), options_(options) {
    spec_.validate();
    require(options_.chain_factor > 0.0, "chain_factor must be positive");
    if (spec_.I0) std::sort(spec_.I0->begin(), spec_.I0->end());
}

const std::optional<XLaw>& XSampler::exact_law(const std::vector<int>& I0) {
    const auto rows = with_u(I0, spec_.u);
    auto it = cache_.find(rows);
    if (it != cache_.end()) return it->second;

    std::optional<XLaw> law;
    try {
        const auto family = enumerate_restricted(spec_.m, rows, options_.exact_limit);
        std::map<std::vector<int>, long long> counts;
        for (const auto& g : family) {
            const auto s = g.row_support(spec_.u);
            ++counts[std::vector<int>(s.begin(), s.end())];
        }
        XLaw l;
        for (auto& [support, c] : counts) {
            l.supports.push_back(support);
            l.counts.push_back(c);
            l.total += c;
        }
        law = std::move(l);
    } catch (const SizeGuardExceeded&) {
        law.reset();
    }
    return cache_.emplace(rows, std::move(law)).first->second;
}

std::vector<int> XSampler::chain_sample(const std::vector<int>& rows, Rng& rng) const {
    const int n = spec_.m.n();
    const int d = spec_.m.d();
    const std::size_t r = rows.size();
    // Free rows only; the other rows never move.
    std::vector<std::vector<int>> support(r);
    std::vector<std::vector<std::uint8_t>> dense(r, std::vector<std::uint8_t>(n, 0));
    for (std::size_t a = 0; a < r; ++a) {
        const auto s = spec_.m.row_support(rows[a]);
        support[a].assign(s.begin(), s.end());
        for (int c : s) dense[a][c] = 1;
    }
    const std::size_t u_slot = std::find(rows.begin(), rows.end(), spec_.u) - rows.begin();
    if (r >= 2) {
        const auto steps = static_cast<std::uint64_t>(std::ceil(options_.chain_factor * r * d));
        for (std::uint64_t step = 0; step < steps; ++step) {
            const auto a = rng.uniform_below(r);
            auto b = rng.uniform_below(r - 1);
            if (b >= a) ++b;
            const auto ka = rng.uniform_below(d);
            const auto kb = rng.uniform_below(d);
            const int ca = support[a][ka];
            const int cb = support[b][kb];
            if (dense[a][cb] || dense[b][ca]) continue;
            dense[a][ca] = 0;
            dense[a][cb] = 1;
            dense[b][cb] = 0;
            dense[b][ca] = 1;
            support[a][ka] = cb;
            support[b][kb] = ca;
        }
    }
    auto out = support[u_slot];
    std::sort(out.begin(), out.end());
    return out;
}

XDraw XSampler::sample(Rng& rng) {
    XDraw draw;
    draw.I0 = spec_.I0 ? *spec_.I0 : sample_I(spec_.J, spec_.m.n(), rng);
    const auto& law = exact_law(draw.I0);
    if (law) {
        const auto pick = static_cast<long long>(rng.uniform_below(static_cast<std::uint64_t>(law->total)));
        long long acc = 0;
        for (std::size_t s = 0; s < law->supports.size(); ++s) {
            acc += law->counts[s];
            if (pick < acc) {
                draw.support = law->supports[s];
                break;
            }
        }
        draw.exact = true;
    } else {
        draw.support = chain_sample(with_u(draw.I0, spec_.u), rng);
        draw.exact = false;
    }
    return draw;
}

XDraw sample_X(const ResamplerSpec& spec, std::uint64_t seed, const XOptions& options) {
    XSampler sampler(spec, options);
    Rng rng(seed);
    return sampler.sample(rng);
}

namespace {

long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long out = 1;
    for (long long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

}  // namespace

SupportCheck uniform_support_check(const RegularDigraph& m, const std::vector<int>& I0, int u) {
    require(u >= 0 && u < m.n(), "u out of range");
    require(std::find(I0.begin(), I0.end(), u) == I0.end(), "u must not belong to I0");
    const auto rows = with_u(I0, u);
    SupportCheck out;
    out.hypothesis_disjoint = supports_pairwise_disjoint(m, rows);
    out.S = support_union(m, rows);
    out.expected_subsets = binomial(static_cast<long long>(out.S.size()), m.d());
    for (const auto& g : enumerate_restricted(m, rows)) {
        const auto s = g.row_support(u);
        ++out.counts[std::vector<int>(s.begin(), s.end())];
        ++out.total;
    }
    bool equal = !out.counts.empty();
    const long long first = equal ? out.counts.begin()->second : 0;
    for (const auto& [support, c] : out.counts) {
        equal = equal && c == first;
        for (int col : support) equal = equal && std::binary_search(out.S.begin(), out.S.end(), col);
    }
    out.equinumerous = equal && static_cast<long long>(out.counts.size()) == out.expected_subsets;
    return out;
}

std::vector<int> CouplingDraw::support() const {
    std::vector<int> out = xi;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CouplingDraw coupling_sampler(const std::vector<int>& S, int d, Rng& rng) {
    require(!S.empty() && d >= 1, "coupling needs a nonempty S and d >= 1");
    CouplingDraw draw;
    draw.xi.reserve(d);
    for (int k = 0; k < d; ++k) draw.xi.push_back(S[rng.uniform_below(S.size())]);
    draw.distinct = static_cast<int>(draw.support().size()) == d;
    return draw;
}

std::string to_string(HypothesisStatus status) {
    switch (status) {
        case HypothesisStatus::Certified:
            return "certified";
        case HypothesisStatus::Violated:
            return "violated";
        case HypothesisStatus::Undecided:
            break;
    }
    return "undecided";
}

SmallBallResult smallball_experiment(std::span<const Complex> y, const ResamplerSpec& spec,
                                     const SmallBallParams& params, const XOptions& options) {
    const int n = spec.m.n();
    const int d = spec.m.d();
    require(static_cast<int>(y.size()) == n, "y has the wrong length");
    require(params.rho > 0.0, "rho must be positive");
    require(params.delta >= 0.0, "delta must be nonnegative");
    require(params.trials >= 1, "trials must be positive");
    std::vector<bool> excluded(n, false);
    for (int j : params.J_tilde) {
        require(j >= 0 && j < n, "J~ index out of range");
        excluded[j] = true;
    }
    const auto jt = std::count(excluded.begin(), excluded.end(), true);

    SmallBallResult out;
    out.ceiling = std::pow(8.0 * static_cast<double>(jt) / n, d) + 144.0 * params.delta + std::pow(n, -0.1);
    const auto profile = level_count(y, params.rho, excluded);
    out.level_count = profile.count;
    out.level_count_double = profile.count_double;
    const double allowed = params.delta * n;
    if (profile.count_double <= allowed)
        out.hypothesis = HypothesisStatus::Certified;
    else if (profile.count > allowed)
        out.hypothesis = HypothesisStatus::Violated;
    else
        out.hypothesis = HypothesisStatus::Undecided;

    XSampler sampler(spec, options);
    long long hits = 0;
    const double radius = params.rho / 4.0;
    for (int t = 0; t < params.trials; ++t) {
        Rng rng(params.seed, static_cast<std::uint64_t>(t));
        const auto draw = sampler.sample(rng);
        Complex s{0.0, 0.0};
        for (int j : draw.support) s += y[j];
        hits += std::abs(s - params.lambda) <= radius;
        (draw.exact ? out.exact_draws : out.approximate_draws) += 1;
    }
    out.estimate = make_frequency(hits, params.trials);
    return out;
}

std::vector<DistanceRecord> row_distance_experiment(int n, int d, Complex z, int i, int trials,
                                                    std::uint64_t master_seed, double C, double gamma) {
    require(n >= 2 && d >= 1 && d <= n, "need n >= 2 and 1 <= d <= n");
    require(i >= 1 && i <= n, "need 1 <= i <= n");
    require(trials >= 1, "trials must be positive");
    require(C > 0.0 && gamma > 0.0, "C and gamma must be positive");
    const double nn = n;
    const double threshold = i < n ? std::exp(-C * std::pow(nn / (n - i), gamma)) : 0.0;
    const double lo = nn - nn / (static_cast<double>(d) * d * d);
    const double hi = nn - 2.0 * nn / std::pow(std::log(nn), 1.0 / gamma);
    const auto spec = ShiftSpec::rescaled(z, d);

    std::vector<DistanceRecord> out;
    out.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        const auto seed = derive_seed(master_seed, static_cast<std::uint64_t>(t));
        Rng rng(seed);
        const auto a = sample_regular(n, d, rng);
        std::vector<int> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        rng.shuffle(sigma);
        const auto b = build_shifted(a.graph, spec);
        OrthonormalBasis basis(n);
        for (int k = 0; k < i - 1; ++k) basis.add(b.row(sigma[k]));

        DistanceRecord r;
        r.trial = t;
        r.seed = seed;
        r.i = i;
        r.row = sigma[i - 1];
        r.distance = norm2(basis.project_complement(b.row(r.row)));
        r.threshold = threshold;
        r.violated = r.distance < threshold;
        r.in_regime = lo <= i && i <= hi;
        r.n = n;
        r.d = d;
        r.gamma = gamma;
        r.C = C;
        r.exact_sample = a.exact;
        out.push_back(r);
    }
    return out;
}

SvFromDistancesVerdict sv_from_distances(double rho, double delta, double L, int m, std::span<const double> svals,
                                         std::span<const double> distances) {
    require(rho > 0.0 && delta > 0.0, "rho and delta must be positive");
    require(L >= 1.0 && L <= 1.0 / (2.0 * delta), "need 1 <= L <= 1/(2 delta)");
    require(m >= 1 && static_cast<std::size_t>(m) <= svals.size(), "need 1 <= m <= number of singular values");
    require(static_cast<int>(distances.size()) == m, "need one distance per row");

    SvFromDistancesVerdict v;
    v.m = m;
    for (double x : distances) v.violations += x < rho;
    v.allowed = L * delta * m;
    v.hypothesis = v.violations <= v.allowed;
    v.bound = rho * std::sqrt(L * delta);
    v.t = static_cast<long long>(std::floor((1.0 - 2.0 * L * delta) * m));
    if (v.t >= 1) {
        v.s_t = svals[v.t - 1];
        v.implication_holds = !v.hypothesis || v.s_t >= v.bound * (1.0 - kImplicationSlack);
    }
    return v;
}

SvFromDistancesVerdict sv_from_distances(double rho, double delta, double L, int m, const ComplexMatrix& b) {
    require(m >= 1 && m <= b.rows(), "need 1 <= m <= rows");
    ComplexMatrix head(m, b.cols());
    for (int i = 0; i < m; ++i) std::copy(b.row(i).begin(), b.row(i).end(), head.row(i).begin());
    const auto distances = leave_one_out_distances(head);
    const auto svals = singular_values(b);
    return sv_from_distances(rho, delta, L, m, svals, distances);
}

std::string to_json_line(const TrialRecord& record) {
    nlohmann::ordered_json j;
    j["experiment_id"] = record.experiment_id;
    j["params"] = record.params;
    j["seed"] = record.seed;
    j["outcome"] = record.outcome;
    j["derived_quantities"] = record.derived_quantities;
    return j.dump();
}

TrialRecord to_trial_record(const DistanceRecord& r) {
    TrialRecord t;
    t.experiment_id = "row-distance";
    t.params = {{"n", double(r.n)}, {"d", double(r.d)}, {"i", double(r.i)}, {"C", r.C}, {"gamma", r.gamma},
                {"trial", double(r.trial)}};
    t.seed = r.seed;
    t.outcome = {{"distance", r.distance}, {"violated", r.violated ? 1.0 : 0.0}, {"row", double(r.row)}};
    t.derived_quantities = {{"threshold", r.threshold},
                            {"in_regime", r.in_regime ? 1.0 : 0.0},
                            {"exact_sample", r.exact_sample ? 1.0 : 0.0}};
    return t;
}

}  // namespace regspec
