#include "regspec/dense_matrix.hpp"

#include <cmath>

#include "regspec/errors.hpp"

namespace regspec {

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
    require(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
    require(data_.size() == static_cast<std::size_t>(rows) * cols, "entry count must equal rows*cols");
    require(all_finite(), "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool ComplexMatrix::is_real() const {
    for (const auto& z : data_)
        if (z.imag() != 0.0) return false;
    return true;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double ComplexMatrix::frobenius_norm() const {
    double sum = 0.0;
    for (const auto& z : data_) sum += std::norm(z);
    return std::sqrt(sum);
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols_ == b.rows_, "matrix product dimension mismatch");
    ComplexMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        auto out_row = out.row(i);
        for (int k = 0; k < a.cols_; ++k) {
            const Complex aik = a(i, k);
            if (aik == 0.0) continue;
            auto b_row = b.row(k);
            for (int j = 0; j < b.cols_; ++j) out_row[j] += aik * b_row[j];
        }
    }
    return out;
}

ComplexVector matvec(const ComplexMatrix& a, std::span<const Complex> x) {
    require(static_cast<int>(x.size()) == a.cols(), "matvec dimension mismatch");
    ComplexVector y(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        Complex acc = 0.0;
        auto r = a.row(i);
        for (int j = 0; j < a.cols(); ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        // conj(a) * b
        re += a[k].real() * b[k].real() + a[k].imag() * b[k].imag();
        im += a[k].real() * b[k].imag() - a[k].imag() * b[k].real();
    }
    return {re, im};
}

double norm2(std::span<const Complex> v) {
    // Scaled accumulation so tiny and huge entries do not under/overflow.
    double scale = 0.0, ssq = 1.0;
    auto accumulate = [&](double x) {
        if (x == 0.0) return;
        const double ax = std::abs(x);
        if (scale < ax) {
            ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
            scale = ax;
        } else {
            ssq += (ax / scale) * (ax / scale);
        }
    };
    for (const auto& z : v) {
        accumulate(z.real());
        accumulate(z.imag());
    }
    return scale * std::sqrt(ssq);
}

}  // namespace regspec
