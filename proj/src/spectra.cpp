#include "regspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "householder.hpp"
#include "regspec/errors.hpp"
#include "regspec/format.hpp"

namespace regspec {

namespace {

void check_input(const ComplexMatrix& m, int size_guard) {
    require(m.all_finite(), "matrix entries must be finite");
    require(m.rows() <= size_guard && m.cols() <= size_guard,
            "matrix exceeds the size guard of " + std::to_string(size_guard));
}

}  // namespace

std::vector<Complex> eigenvalues(const ComplexMatrix& m, const EigenOptions& options) {
    require(m.is_square(), "eigenvalues need a square matrix");
    check_input(m, options.size_guard);
    if (m.is_real()) {
        auto a = detail::to_dense<double>(m);
        if (options.balance) detail::balance(a);
        detail::hessenberg_reduce(a);
        return detail::hessenberg_eigenvalues(a);
    }
    auto a = detail::to_dense<Complex>(m);
    if (options.balance) detail::balance(a);
    detail::hessenberg_reduce(a);
    return detail::hessenberg_eigenvalues(a);
}

std::vector<double> singular_values(const ComplexMatrix& m, int size_guard) {
    check_input(m, size_guard);
    if (m.rows() == 0 || m.cols() == 0) return {};
    const ComplexMatrix& tall = m;
    ComplexMatrix transposed;
    const ComplexMatrix* src = &tall;
    if (m.rows() < m.cols()) {
        transposed = m.adjoint();
        src = &transposed;
    }
    std::vector<double> diag, super;
    if (src->is_real()) {
        auto a = detail::to_dense<double>(*src);
        detail::bidiagonalize(a, diag, super);
    } else {
        auto a = detail::to_dense<Complex>(*src);
        detail::bidiagonalize(a, diag, super);
    }
    auto s = detail::bidiagonal_singular_values(std::move(diag), std::move(super));
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

double singular_value_floor(std::span<const double> svals, int rows, int cols) {
    if (svals.empty()) return 0.0;
    return std::max(rows, cols) * std::numeric_limits<double>::epsilon() * svals.front();
}

std::vector<double> eigen_backward_errors(const ComplexMatrix& m, std::span<const Complex> eigs) {
    require(m.is_square(), "backward errors need a square matrix");
    const int n = m.rows();
    std::vector<double> out;
    out.reserve(eigs.size());
    if (n == 0) return out;
    auto h = detail::to_dense<Complex>(m);
    detail::HessenbergFactors<Complex> factors;
    detail::hessenberg_reduce(h, &factors);
    const double mnorm = m.frobenius_norm();
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(mnorm, 1e-300);

    std::vector<Complex> work(n), x(n);
    // Packed LU of (H - lambda I) with adjacent-row pivoting.
    detail::Dense<Complex> lu(n, n);
    std::vector<Complex> multipliers(n);
    std::vector<bool> swapped(n);
    for (const Complex lambda : eigs) {
        lu.a = h.a;
        for (int i = 0; i < n; ++i) lu(i, i) -= lambda;
        for (int k = 0; k + 1 < n; ++k) {
            swapped[k] = std::abs(lu(k + 1, k)) > std::abs(lu(k, k));
            if (swapped[k])
                for (int j = k; j < n; ++j) std::swap(lu(k, j), lu(k + 1, j));
            if (lu(k, k) == Complex{}) lu(k, k) = tiny;
            const Complex mult = lu(k + 1, k) / lu(k, k);
            multipliers[k] = mult;
            for (int j = k + 1; j < n; ++j) lu(k + 1, j) -= mult * lu(k, j);
        }
        if (lu(n - 1, n - 1) == Complex{}) lu(n - 1, n - 1) = tiny;

        std::fill(x.begin(), x.end(), Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
        for (int iter = 0; iter < 2; ++iter) {
            for (int k = 0; k + 1 < n; ++k) {
                if (swapped[k]) std::swap(x[k], x[k + 1]);
                x[k + 1] -= multipliers[k] * x[k];
            }
            for (int i = n - 1; i >= 0; --i) {
                Complex acc = x[i];
                for (int j = i + 1; j < n; ++j) acc -= lu(i, j) * x[j];
                x[i] = acc / lu(i, i);
            }
            const double nx = norm2(x);
            if (!(nx > 0.0) || !std::isfinite(nx)) break;
            for (auto& v : x) v /= nx;
        }
        // Map back: v = Q x with Q = H_0 H_1 ... ; apply the last reflector first.
        work = x;
        for (int k = static_cast<int>(factors.tau.size()) - 1; k >= 0; --k) {
            const auto& v = factors.v[k];
            Complex dot = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(v[i]) * work[k + 1 + i];
            const Complex f = factors.tau[k] * dot;
            for (std::size_t i = 0; i < v.size(); ++i) work[k + 1 + i] -= f * v[i];
        }
        const auto mv = matvec(m, work);
        double rnorm2 = 0.0;
        for (int i = 0; i < n; ++i) rnorm2 += std::norm(mv[i] - lambda * work[i]);
        const double vnorm = norm2(work);
        out.push_back(vnorm > 0.0 && mnorm > 0.0 ? std::sqrt(rnorm2) / (mnorm * vnorm) : 0.0);
    }
    return out;
}

SpectralSummary summarize_spectrum(const ComplexMatrix& m, const EigenOptions& options) {
    SpectralSummary s;
    s.eigenvalues = eigenvalues(m, options);
    s.singular_values = singular_values(m, options.size_guard);
    s.backward_errors = eigen_backward_errors(m, s.eigenvalues);
    s.sv_floor = singular_value_floor(s.singular_values, m.rows(), m.cols());
    for (double v : s.singular_values) s.indistinguishable_from_zero.push_back(v <= s.sv_floor);
    return s;
}

std::string to_csv(const SpectralSummary& summary) {
    std::string out = "index,re_lambda,im_lambda,s,backward_error\n";
    const std::size_t rows = std::max(summary.eigenvalues.size(), summary.singular_values.size());
    for (std::size_t i = 0; i < rows; ++i) {
        out += std::to_string(i);
        out += ',';
        if (i < summary.eigenvalues.size()) {
            out += format_double(summary.eigenvalues[i].real());
            out += ',';
            out += format_double(summary.eigenvalues[i].imag());
        } else {
            out += ',';
        }
        out += ',';
        if (i < summary.singular_values.size()) out += format_double(summary.singular_values[i]);
        out += ',';
        if (i < summary.backward_errors.size()) out += format_double(summary.backward_errors[i]);
        out += '\n';
    }
    return out;
}

}  // namespace regspec
