#include "regspec/projection.hpp"

#include <cmath>

#include "householder.hpp"
#include "regspec/errors.hpp"

namespace regspec {

OrthonormalBasis::OrthonormalBasis(int dimension, std::span<const ComplexVector> rows) : dimension_(dimension) {
    for (const auto& r : rows) add(r);
}

OrthonormalBasis OrthonormalBasis::of_rows(const ComplexMatrix& rows) {
    OrthonormalBasis basis(rows.cols());
    for (int i = 0; i < rows.rows(); ++i) basis.add(rows.row(i));
    return basis;
}

void OrthonormalBasis::subtract_projection(std::span<Complex> w) const {
    for (const auto& q : vectors_) {
        const Complex c = inner(q, w);
        for (int k = 0; k < dimension_; ++k) w[k] -= detail::mul(c, q[k]);
    }
}

bool OrthonormalBasis::add(std::span<const Complex> row) {
    require(static_cast<int>(row.size()) == dimension_, "basis row has the wrong dimension");
    const double original = norm2(row);
    if (original == 0.0) return false;
    ComplexVector w(row.begin(), row.end());
    subtract_projection(w);
    subtract_projection(w);
    const double residual = norm2(w);
    if (residual <= kNullDirectionThreshold * original) return false;
    for (auto& x : w) x /= residual;
    vectors_.push_back(std::move(w));
    return true;
}

ComplexVector OrthonormalBasis::project_complement(std::span<const Complex> v) const {
    require(static_cast<int>(v.size()) == dimension_, "vector has the wrong dimension");
    ComplexVector w(v.begin(), v.end());
    subtract_projection(w);
    subtract_projection(w);
    return w;
}

ComplexVector project_complement(std::span<const ComplexVector> row_basis, std::span<const Complex> v) {
    const OrthonormalBasis basis(static_cast<int>(v.size()), row_basis);
    return basis.project_complement(v);
}

double distance_to_span(std::span<const Complex> v, std::span<const ComplexVector> rows) {
    return norm2(project_complement(rows, v));
}

namespace {

void leave_one_out(std::vector<ComplexVector> rows, int dimension, std::span<double> out) {
    const std::size_t m = rows.size();
    if (m == 1) {
        out[0] = norm2(rows[0]);
        return;
    }
    const std::size_t half = m / 2;
    const std::span<const ComplexVector> left(rows.data(), half);
    const std::span<const ComplexVector> right(rows.data() + half, m - half);
    const OrthonormalBasis left_basis(dimension, left);
    const OrthonormalBasis right_basis(dimension, right);

    std::vector<ComplexVector> left_projected;
    left_projected.reserve(half);
    for (const auto& r : left) left_projected.push_back(right_basis.project_complement(r));
    std::vector<ComplexVector> right_projected;
    right_projected.reserve(m - half);
    for (const auto& r : right) right_projected.push_back(left_basis.project_complement(r));
    rows.clear();
    rows.shrink_to_fit();

    leave_one_out(std::move(left_projected), dimension, out.subspan(0, half));
    leave_one_out(std::move(right_projected), dimension, out.subspan(half));
}

}  // namespace

std::vector<double> leave_one_out_distances(const ComplexMatrix& rows) {
    std::vector<double> out(rows.rows());
    if (rows.rows() == 0) return out;
    std::vector<ComplexVector> copy;
    copy.reserve(rows.rows());
    for (int i = 0; i < rows.rows(); ++i) copy.emplace_back(rows.row(i).begin(), rows.row(i).end());
    leave_one_out(std::move(copy), rows.cols(), out);
    return out;
}

}  // namespace regspec
