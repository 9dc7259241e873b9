#include "householder.hpp"

#include <cmath>

namespace regspec::detail {

template <class T>
void hessenberg_reduce(Dense<T>& A, HessenbergFactors<T>* factors) {
    const int n = A.rows;
    std::vector<T> v;
    std::vector<T> work;
    for (int k = 0; k + 2 < n; ++k) {
        v.resize(n - k - 1);
        for (int i = k + 1; i < n; ++i) v[i - k - 1] = A(i, k);
        const auto h = make_reflector<T>(std::span<T>(v));
        A(k + 1, k) = T(h.beta);
        for (int i = k + 2; i < n; ++i) A(i, k) = T{};
        const std::span<const T> vs(v);
        apply_left(A, k + 1, n, k + 1, n, vs, h.tau, work);
        apply_right(A, 0, n, k + 1, n, vs, h.tau);
        if (factors) {
            factors->v.push_back(v);
            factors->tau.push_back(h.tau);
        }
    }
}

template <class T>
void bidiagonalize(Dense<T>& A, std::vector<double>& diag, std::vector<double>& super) {
    const int m = A.rows;
    const int n = A.cols;
    diag.assign(n, 0.0);
    super.assign(n > 0 ? n - 1 : 0, 0.0);
    std::vector<T> v;
    std::vector<T> work;
    for (int k = 0; k < n; ++k) {
        // Left reflector annihilates A(k+1:m, k).
        v.resize(m - k);
        for (int i = k; i < m; ++i) v[i - k] = A(i, k);
        const auto hl = make_reflector<T>(std::span<T>(v));
        diag[k] = hl.beta;
        apply_left(A, k, m, k + 1, n, std::span<const T>(v), hl.tau, work);
        if (k + 1 >= n) continue;
        // Right reflector annihilates A(k, k+2:n); built from the conjugated row.
        v.resize(n - k - 1);
        for (int j = k + 1; j < n; ++j) v[j - k - 1] = cj(A(k, j));
        const auto hr = make_reflector<T>(std::span<T>(v));
        super[k] = hr.beta;
        apply_right(A, k + 1, m, k + 1, n, std::span<const T>(v), hr.tau);
    }
}

template <class T>
void balance(Dense<T>& A) {
    const int n = A.rows;
    constexpr double radix = 2.0;
    constexpr double radix2 = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(real_part(A(j, i))) + std::abs(imag_part(A(j, i)));
                r += std::abs(real_part(A(i, j))) + std::abs(imag_part(A(i, j)));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double g = r / radix;
            double f = 1.0;
            while (c < g) {
                f *= radix;
                c *= radix2;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= radix2;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double inv = 1.0 / f;
                for (int j = 0; j < n; ++j) A(i, j) *= inv;
                for (int j = 0; j < n; ++j) A(j, i) *= f;
            }
        }
    }
}

template void hessenberg_reduce<double>(Dense<double>&, HessenbergFactors<double>*);
template void hessenberg_reduce<Complex>(Dense<Complex>&, HessenbergFactors<Complex>*);
template void bidiagonalize<double>(Dense<double>&, std::vector<double>&, std::vector<double>&);
template void bidiagonalize<Complex>(Dense<Complex>&, std::vector<double>&, std::vector<double>&);
template void balance<double>(Dense<double>&);
template void balance<Complex>(Dense<Complex>&);

}  // namespace regspec::detail
