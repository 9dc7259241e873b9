#pragma once

#include <span>
#include <vector>

namespace regspec {

struct SampleSummary {
    long long count = 0;
    double mean = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(count); 0 when count < 2
};

/// Accumulated in index order, so the result does not depend on scheduling.
SampleSummary summarize(std::span<const double> values);

/// Upper tail of the chi-square law with `dof` degrees of freedom.
double chi_square_sf(double statistic, double dof);

/// Pearson goodness-of-fit p-value. `expected` holds probabilities (any
/// positive scale; normalized internally) with one entry per cell.
double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected);
double chi_square_uniform_pvalue(std::span<const double> observed);

/// Total variation distance between two histograms after normalization.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace regspec
