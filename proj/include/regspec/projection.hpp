#pragma once

#include <span>
#include <vector>

#include "regspec/dense_matrix.hpp"

namespace regspec {

/// Orthonormal basis of span(rows), built incrementally by modified
/// Gram-Schmidt with one reorthogonalization pass. A row whose residual falls
/// below 1e-12 * (its original norm) is treated as dependent and dropped.
class OrthonormalBasis {
public:
    explicit OrthonormalBasis(int dimension) : dimension_(dimension) {}
    OrthonormalBasis(int dimension, std::span<const ComplexVector> rows);
    /// Basis of the row space of `rows`.
    static OrthonormalBasis of_rows(const ComplexMatrix& rows);

    /// Returns true when the row added a new direction.
    bool add(std::span<const Complex> row);

    int dimension() const { return dimension_; }
    int rank() const { return static_cast<int>(vectors_.size()); }
    const std::vector<ComplexVector>& vectors() const { return vectors_; }

    /// v minus its orthogonal projection onto the span.
    ComplexVector project_complement(std::span<const Complex> v) const;

private:
    void subtract_projection(std::span<Complex> w) const;

    int dimension_;
    std::vector<ComplexVector> vectors_;
};

constexpr double kNullDirectionThreshold = 1e-12;

/// P_{E^perp} v with E = span(row_basis).
ComplexVector project_complement(std::span<const ComplexVector> row_basis, std::span<const Complex> v);

/// ||P_{E^perp} v||_2.
double distance_to_span(std::span<const Complex> v, std::span<const ComplexVector> rows);

/// For each row i of `rows`, the distance from row i to the span of all other
/// rows. Computed by recursive halving: each half is projected onto the
/// orthogonal complement of the other half before recursing, which costs
/// O(m^2 n) instead of the O(m^3 n) of m independent projections.
std::vector<double> leave_one_out_distances(const ComplexMatrix& rows);

}  // namespace regspec
