#include "regspec/statistics.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>

#include "regspec/errors.hpp"

namespace regspec {

SampleSummary summarize(std::span<const double> values) {
    SampleSummary s;
    s.count = static_cast<long long>(values.size());
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(s.count);
    if (s.count < 2) return s;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / static_cast<double>(s.count - 1) / static_cast<double>(s.count));
    return s;
}

double chi_square_sf(double statistic, double dof) {
    require(dof > 0.0, "chi-square needs positive degrees of freedom");
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected) {
    require(observed.size() == expected.size() && observed.size() >= 2, "need at least two matching cells");
    const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
    const double scale = std::accumulate(expected.begin(), expected.end(), 0.0);
    require(total > 0.0 && scale > 0.0, "empty histogram");
    double stat = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        require(expected[k] > 0.0, "expected cell probabilities must be positive");
        const double e = total * expected[k] / scale;
        stat += (observed[k] - e) * (observed[k] - e) / e;
    }
    return chi_square_sf(stat, static_cast<double>(observed.size() - 1));
}

double chi_square_uniform_pvalue(std::span<const double> observed) {
    const std::vector<double> flat(observed.size(), 1.0);
    return chi_square_pvalue(observed, flat);
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    require(p.size() == q.size(), "histograms differ in length");
    const double sp = std::accumulate(p.begin(), p.end(), 0.0);
    const double sq = std::accumulate(q.begin(), q.end(), 0.0);
    require(sp > 0.0 && sq > 0.0, "empty histogram");
    double tv = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) tv += std::abs(p[k] / sp - q[k] / sq);
    return tv / 2.0;
}

}  // namespace regspec
