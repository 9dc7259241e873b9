#pragma once

// Internal dense kernels shared by the eigenvalue and singular value drivers.
// Templated on the scalar so real input takes the cheaper real path.

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "regspec/dense_matrix.hpp"

namespace regspec::detail {

inline double cj(double x) { return x; }
inline Complex cj(const Complex& z) { return std::conj(z); }
inline double abs2(double x) { return x * x; }
inline double abs2(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }
inline double real_part(double x) { return x; }
inline double real_part(const Complex& z) { return z.real(); }
inline double imag_part(double) { return 0.0; }
inline double imag_part(const Complex& z) { return z.imag(); }

// Plain arithmetic without the NaN-recovery branch of std::complex operator*.
inline double mul(double a, double b) { return a * b; }
inline Complex mul(const Complex& a, const Complex& b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}
/// conj(a) * b
inline double cmul(double a, double b) { return a * b; }
inline Complex cmul(const Complex& a, const Complex& b) {
    return {a.real() * b.real() + a.imag() * b.imag(), a.real() * b.imag() - a.imag() * b.real()};
}

template <class T>
struct Dense {
    int rows = 0;
    int cols = 0;
    std::vector<T> a;

    Dense() = default;
    Dense(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    T* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
    const T* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }
};

template <class T>
Dense<T> to_dense(const ComplexMatrix& m) {
    Dense<T> out(m.rows(), m.cols());
    for (std::size_t k = 0; k < out.a.size(); ++k) {
        if constexpr (std::is_same_v<T, double>)
            out.a[k] = m.data()[k].real();
        else
            out.a[k] = m.data()[k];
    }
    return out;
}

/// Elementary reflector H = I - tau v v^H with v[0] = 1 such that
/// H^H (alpha, x) = (beta, 0) with beta real. On return x[1:] holds v[1:].
template <class T>
struct Reflector {
    T tau{};
    double beta = 0.0;
};

template <class T>
Reflector<T> make_reflector(std::span<T> x) {
    const T alpha = x[0];
    double tail = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) tail += abs2(x[k]);
    const double alpha_re = real_part(alpha);
    const double alpha_im = imag_part(alpha);
    if (tail == 0.0 && alpha_im == 0.0) return {T{}, alpha_re};
    const double norm = std::sqrt(alpha_re * alpha_re + alpha_im * alpha_im + tail);
    const double beta = alpha_re >= 0.0 ? -norm : norm;
    T tau;
    if constexpr (std::is_same_v<T, double>)
        tau = (beta - alpha_re) / beta;
    else
        tau = Complex((beta - alpha_re) / beta, -alpha_im / beta);
    const T scale = T(1.0) / (alpha - T(beta));
    for (std::size_t k = 1; k < x.size(); ++k) x[k] = mul(x[k], scale);
    x[0] = T(1.0);
    return {tau, beta};
}

/// A[r0:r1, c0:c1] <- (I - conj(tau) v v^H) A, i.e. H^H applied from the left.
/// v has length r1 - r0. work needs c1 - c0 entries.
template <class T>
void apply_left(Dense<T>& A, int r0, int r1, int c0, int c1, std::span<const T> v, T tau, std::vector<T>& work) {
    if (tau == T{} || c0 >= c1) return;
    const int width = c1 - c0;
    work.assign(width, T{});
    for (int i = r0; i < r1; ++i) {
        const T vi = cj(v[i - r0]);
        const T* row = A.row(i) + c0;
        for (int j = 0; j < width; ++j) work[j] += mul(vi, row[j]);
    }
    const T ctau = cj(tau);
    for (int i = r0; i < r1; ++i) {
        const T f = mul(ctau, v[i - r0]);
        T* row = A.row(i) + c0;
        for (int j = 0; j < width; ++j) row[j] -= mul(f, work[j]);
    }
}

/// A[r0:r1, c0:c1] <- A (I - tau v v^H). v has length c1 - c0.
template <class T>
void apply_right(Dense<T>& A, int r0, int r1, int c0, int c1, std::span<const T> v, T tau) {
    if (tau == T{} || r0 >= r1) return;
    const int width = c1 - c0;
    for (int i = r0; i < r1; ++i) {
        T* row = A.row(i) + c0;
        T w{};
        for (int j = 0; j < width; ++j) w += mul(row[j], v[j]);
        const T f = mul(w, tau);
        for (int j = 0; j < width; ++j) row[j] -= mul(f, cj(v[j]));
    }
}

/// Stored reflectors of a Hessenberg reduction: reflector k acts on rows and
/// columns k+1..n-1.
template <class T>
struct HessenbergFactors {
    std::vector<std::vector<T>> v;
    std::vector<T> tau;
};

/// In-place Householder reduction to upper Hessenberg form, A <- Q^H A Q.
template <class T>
void hessenberg_reduce(Dense<T>& A, HessenbergFactors<T>* factors = nullptr);

/// Householder reduction of an m x n matrix (m >= n) to real upper bidiagonal
/// form. Returns diagonal (n) and superdiagonal (n-1).
template <class T>
void bidiagonalize(Dense<T>& A, std::vector<double>& diag, std::vector<double>& super);

/// Parlett-Reinsch diagonal scaling (radix 2). Similarity transform, so the
/// spectrum is unchanged; only rounding behavior improves.
template <class T>
void balance(Dense<T>& A);

/// Eigenvalues of a real upper Hessenberg matrix (Francis double shift).
std::vector<Complex> hessenberg_eigenvalues(Dense<double>& H);
/// Eigenvalues of a complex upper Hessenberg matrix (single-shift QR).
std::vector<Complex> hessenberg_eigenvalues(Dense<Complex>& H);

/// Singular values of the real bidiagonal (diag, super) by implicit-shift
/// Golub-Kahan QR. Unsorted absolute values.
std::vector<double> bidiagonal_singular_values(std::vector<double> diag, std::vector<double> super);

}  // namespace regspec::detail
