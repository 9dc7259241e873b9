#include <cmath>
#include <limits>
#include <string>

#include "householder.hpp"
#include "regspec/errors.hpp"

namespace regspec::detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline double sign_of(double magnitude, double s) { return s >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude); }

[[noreturn]] void fail_convergence(int n) {
    throw NonConvergence("Hessenberg QR did not converge within " + std::to_string(40 * n) + " sweeps");
}

}  // namespace

// Francis double-shift QR on the active window; eigenvalues only, so rotations
// are restricted to the unreduced block. Deflation when
// |h(l,l-1)| <= eps * (|h(l-1,l-1)| + |h(l,l)|), or below eps * max|h| so that
// rank-deficient inputs, whose reduced diagonals are themselves at rounding
// level, still deflate.
std::vector<Complex> hessenberg_eigenvalues(Dense<double>& H) {
    const int n = H.rows;
    std::vector<Complex> eig(n);
    if (n == 0) return eig;
    auto a = [&H](int i, int j) -> double& { return H(i, j); };

    double anorm = 0.0, amax = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) {
            anorm += std::abs(a(i, j));
            amax = std::max(amax, std::abs(a(i, j)));
        }

    const long sweep_cap = 40L * n;
    long sweeps = 0;
    int nn = n - 1;
    double shift_total = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= kEps * std::max(s, amax)) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                eig[nn] = {x + shift_total, 0.0};
                --nn;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    const double p = 0.5 * (y - x);
                    const double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += shift_total;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        eig[nn - 1] = eig[nn] = {x + z, 0.0};
                        if (z != 0.0) eig[nn] = {x - w / z, 0.0};
                    } else {
                        eig[nn - 1] = {x + p, z};
                        eig[nn] = {x + p, -z};
                    }
                    nn -= 2;
                } else {
                    if (++sweeps > sweep_cap) fail_convergence(n);
                    if (its > 0 && its % 10 == 0) {
                        // Exceptional shift.
                        shift_total += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int m = nn - 2;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    for (; m >= l; --m) {
                        z = a(m, m);
                        r = x - z;
                        double s = y - z;
                        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - r - s;
                        r = a(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
                        if (u <= kEps * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k != nn - 1) r = a(k + 2, k - 1);
                            if ((x = std::abs(p) + std::abs(q) + std::abs(r)) != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        double* row_k = H.row(k);
                        double* row_k1 = H.row(k + 1);
                        if (k != nn - 1) {
                            double* row_k2 = H.row(k + 2);
                            for (int j = k; j <= nn; ++j) {
                                const double t = row_k[j] + q * row_k1[j] + r * row_k2[j];
                                row_k2[j] -= t * z;
                                row_k1[j] -= t * y;
                                row_k[j] -= t * x;
                            }
                        } else {
                            for (int j = k; j <= nn; ++j) {
                                const double t = row_k[j] + q * row_k1[j];
                                row_k1[j] -= t * y;
                                row_k[j] -= t * x;
                            }
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            double* row_i = H.row(i);
                            double t = x * row_i[k] + y * row_i[k + 1];
                            if (k != nn - 1) {
                                t += z * row_i[k + 2];
                                row_i[k + 2] -= t * r;
                            }
                            row_i[k + 1] -= t * q;
                            row_i[k] -= t;
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
    return eig;
}

namespace {

struct Rotation {
    double c = 1.0;
    Complex s{};
    Complex r{};
};

/// c real, s complex with [c s; -conj(s) c] (x, y)^T = (r, 0)^T.
Rotation make_rotation(Complex x, Complex y) {
    if (y == Complex{}) return {1.0, {}, x};
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ax == 0.0) return {0.0, std::conj(y) / ay, Complex(ay, 0.0)};
    const double norm = std::hypot(ax, ay);
    const Complex phase = x / ax;
    return {ax / norm, phase * std::conj(y) / norm, phase * norm};
}

inline double cabs1(const Complex& z) { return std::abs(z.real()) + std::abs(z.imag()); }

}  // namespace

std::vector<Complex> hessenberg_eigenvalues(Dense<Complex>& H) {
    const int n = H.rows;
    std::vector<Complex> eig(n);
    if (n == 0) return eig;
    double hnorm = 0.0;
    for (const auto& z : H.a) hnorm = std::max(hnorm, std::abs(z));

    const long sweep_cap = 40L * n;
    long sweeps = 0;
    int hi = n - 1;
    int its = 0;
    while (hi >= 0) {
        int l = hi;
        for (; l >= 1; --l) {
            double s = std::abs(H(l - 1, l - 1)) + std::abs(H(l, l));
            if (s == 0.0) s = hnorm;
            if (std::abs(H(l, l - 1)) <= kEps * std::max(s, hnorm)) {
                H(l, l - 1) = 0.0;
                break;
            }
        }
        if (l == hi) {
            eig[hi] = H(hi, hi);
            --hi;
            its = 0;
            continue;
        }
        if (++sweeps > sweep_cap) fail_convergence(n);

        Complex shift;
        if (its > 0 && its % 20 == 10) {
            shift = 0.75 * std::abs(H(l + 1, l).real()) + H(l, l);
        } else if (its > 0 && its % 20 == 0) {
            shift = 0.75 * std::abs(H(hi, hi - 1).real()) + H(hi, hi);
        } else {
            // Wilkinson: eigenvalue of the trailing 2x2 closer to H(hi, hi).
            const Complex a = H(hi - 1, hi - 1), b = H(hi - 1, hi), c = H(hi, hi - 1), d = H(hi, hi);
            const Complex bc = b * c;
            const Complex p = 0.5 * (a - d);
            const Complex disc = std::sqrt(p * p + bc);
            const Complex den = cabs1(p + disc) >= cabs1(p - disc) ? p + disc : p - disc;
            shift = den == Complex{} ? d : d - bc / den;
        }
        ++its;

        Complex x = H(l, l) - shift;
        Complex y = H(l + 1, l);
        for (int k = l; k < hi; ++k) {
            if (k > l) {
                x = H(k, k - 1);
                y = H(k + 1, k - 1);
            }
            const Rotation g = make_rotation(x, y);
            int first_col = k;
            if (k > l) {
                H(k, k - 1) = g.r;
                H(k + 1, k - 1) = 0.0;
            }
            const Complex sc = std::conj(g.s);
            Complex* row_k = H.row(k);
            Complex* row_k1 = H.row(k + 1);
            for (int j = first_col; j <= hi; ++j) {
                const Complex u = row_k[j], v = row_k1[j];
                row_k[j] = g.c * u + mul(g.s, v);
                row_k1[j] = g.c * v - mul(sc, u);
            }
            const int last_row = std::min(k + 2, hi);
            for (int i = l; i <= last_row; ++i) {
                Complex* row_i = H.row(i);
                const Complex u = row_i[k], v = row_i[k + 1];
                row_i[k] = g.c * u + mul(v, sc);
                row_i[k + 1] = g.c * v - mul(u, g.s);
            }
        }
    }
    return eig;
}

}  // namespace regspec::detail
