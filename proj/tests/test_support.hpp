#pragma once

#include <boost/math/special_functions/gamma.hpp>
#include <numeric>
#include <vector>

namespace testing {

/// Pearson chi-square p-value of `counts` against the uniform law.
inline double chi_square_uniform_pvalue(const std::vector<double>& counts) {
    const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
    const double expected = total / counts.size();
    double stat = 0.0;
    for (double c : counts) stat += (c - expected) * (c - expected) / expected;
    return boost::math::gamma_q((counts.size() - 1) / 2.0, stat / 2.0);
}

}  // namespace testing
