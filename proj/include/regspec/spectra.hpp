#pragma once

#include <span>
#include <string>
#include <vector>

#include "regspec/dense_matrix.hpp"

namespace regspec {

constexpr int kDefaultSizeGuard = 4096;

struct EigenOptions {
    /// Diagonal similarity scaling before the Hessenberg reduction. Affects
    /// rounding only, never the mathematical spectrum.
    bool balance = true;
    int size_guard = kDefaultSizeGuard;
};

/// All n eigenvalues with multiplicity (arbitrary order): balancing,
/// Householder Hessenberg reduction, then implicitly shifted QR with
/// deflation. Real input uses the Francis double-shift path, complex input the
/// single-shift path. Throws NonConvergence after 40*n sweeps.
std::vector<Complex> eigenvalues(const ComplexMatrix& m, const EigenOptions& options = {});

/// Singular values in nonincreasing order via Householder bidiagonalization
/// and implicit-shift QR on the bidiagonal. Any shape. Values are reported as
/// computed, including tiny ones.
std::vector<double> singular_values(const ComplexMatrix& m, int size_guard = kDefaultSizeGuard);

/// ||M v - lambda v|| / (||M||_F ||v||) for each eigenvalue, with v from two
/// steps of inverse iteration on the Hessenberg form.
std::vector<double> eigen_backward_errors(const ComplexMatrix& m, std::span<const Complex> eigs);

/// Below this level a computed singular value cannot be told apart from 0:
/// max(rows, cols) * eps * s_1.
double singular_value_floor(std::span<const double> svals, int rows, int cols);

struct SpectralSummary {
    std::vector<Complex> eigenvalues;
    std::vector<double> singular_values;  ///< nonincreasing
    std::vector<double> backward_errors;  ///< per eigenvalue
    double sv_floor = 0.0;
    std::vector<bool> indistinguishable_from_zero;  ///< per singular value
};

SpectralSummary summarize_spectrum(const ComplexMatrix& m, const EigenOptions& options = {});

/// Columns: index, re_lambda, im_lambda, s, backward_error.
std::string to_csv(const SpectralSummary& summary);

}  // namespace regspec
