#pragma once

#include <complex>
#include <span>
#include <vector>

namespace regspec {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix with double components.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);
    ComplexMatrix(int rows, int cols, std::vector<Complex> entries);

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    std::span<Complex> row(int i) { return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<const Complex> row(int i) const {
        return {data_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)};
    }

    const std::vector<Complex>& data() const { return data_; }

    bool is_square() const { return rows_ == cols_; }
    /// True when every imaginary part is exactly zero.
    bool is_real() const;
    bool all_finite() const;
    double frobenius_norm() const;
    ComplexMatrix adjoint() const;

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> data_;
};

ComplexVector matvec(const ComplexMatrix& a, std::span<const Complex> x);

/// <a, b> = sum conj(a_k) b_k
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm2(std::span<const Complex> v);

}  // namespace regspec
