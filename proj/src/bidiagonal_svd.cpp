#include <cmath>
#include <limits>
#include <string>

#include "householder.hpp"
#include "regspec/errors.hpp"

namespace regspec::detail {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
    double c = 1.0;
    double s = 0.0;
    double r = 0.0;
};

/// (c, s) with [c s; -s c] (a, b)^T = (r, 0)^T.
Givens givens(double a, double b) {
    if (b == 0.0) return {1.0, 0.0, a};
    const double r = std::hypot(a, b);
    return {a / r, b / r, r};
}

/// d[row] == 0: rotate row `row` against the rows below it to annihilate e[row].
void chase_row(std::vector<double>& d, std::vector<double>& e, int row, int hi) {
    double f = e[row];
    e[row] = 0.0;
    for (int j = row + 1; j <= hi && f != 0.0; ++j) {
        const Givens g = givens(d[j], f);
        d[j] = g.r;
        if (j < hi) {
            f = -g.s * e[j];
            e[j] = g.c * e[j];
        }
    }
}

/// d[hi] == 0: rotate column hi against the columns to its left to annihilate e[hi-1].
void chase_column(std::vector<double>& d, std::vector<double>& e, int lo, int hi) {
    double f = e[hi - 1];
    e[hi - 1] = 0.0;
    for (int j = hi - 1; j >= lo && f != 0.0; --j) {
        const Givens g = givens(d[j], f);
        d[j] = g.r;
        if (j > lo) {
            f = -g.s * e[j - 1];
            e[j - 1] = g.c * e[j - 1];
        }
    }
}

/// One implicit-shift Golub-Kahan sweep on the unreduced block lo..hi.
void golub_kahan_step(std::vector<double>& d, std::vector<double>& e, int lo, int hi) {
    // Shift: eigenvalue of the trailing 2x2 of B^T B closer to its last entry.
    const double t11 = d[hi - 1] * d[hi - 1] + (hi - 1 > lo ? e[hi - 2] * e[hi - 2] : 0.0);
    const double t12 = d[hi - 1] * e[hi - 1];
    const double t22 = d[hi] * d[hi] + e[hi - 1] * e[hi - 1];
    const double dt = 0.5 * (t11 - t22);
    double mu = t22;
    const double root = std::hypot(dt, t12);
    if (root != 0.0) mu = t22 - t12 * t12 / (dt + (dt >= 0.0 ? root : -root));

    double y = d[lo] * d[lo] - mu;
    double z = d[lo] * e[lo];
    for (int k = lo; k < hi; ++k) {
        Givens g = givens(y, z);
        if (k > lo) e[k - 1] = g.r;
        const double f = g.c * d[k] + g.s * e[k];
        e[k] = -g.s * d[k] + g.c * e[k];
        const double bulge = g.s * d[k + 1];
        d[k + 1] = g.c * d[k + 1];

        g = givens(f, bulge);
        d[k] = g.r;
        const double upper = g.c * e[k] + g.s * d[k + 1];
        d[k + 1] = -g.s * e[k] + g.c * d[k + 1];
        e[k] = upper;
        if (k + 1 < hi) {
            z = g.s * e[k + 1];
            e[k + 1] = g.c * e[k + 1];
            y = e[k];
        }
    }
}

}  // namespace

std::vector<double> bidiagonal_singular_values(std::vector<double> d, std::vector<double> e) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return d;
    double bnorm = 0.0;
    for (double v : d) bnorm = std::max(bnorm, std::abs(v));
    for (double v : e) bnorm = std::max(bnorm, std::abs(v));
    const double zero_threshold = kEps * bnorm;

    const long sweep_cap = 40L * n;
    long sweeps = 0;
    int hi = n - 1;
    while (hi > 0) {
        for (int i = 0; i < hi; ++i)
            if (std::abs(e[i]) <= kEps * (std::abs(d[i]) + std::abs(d[i + 1]))) e[i] = 0.0;
        if (e[hi - 1] == 0.0) {
            --hi;
            continue;
        }
        int lo = hi - 1;
        while (lo > 0 && e[lo - 1] != 0.0) --lo;

        bool chased = false;
        for (int i = lo; i <= hi; ++i) {
            if (std::abs(d[i]) > zero_threshold) continue;
            d[i] = 0.0;
            if (i < hi)
                chase_row(d, e, i, hi);
            else
                chase_column(d, e, lo, hi);
            chased = true;
            break;
        }
        if (chased) continue;

        if (++sweeps > sweep_cap)
            throw NonConvergence("bidiagonal QR did not converge within " + std::to_string(sweep_cap) + " sweeps");
        golub_kahan_step(d, e, lo, hi);
    }
    for (double& v : d) v = std::abs(v);
    return d;
}

}  // namespace regspec::detail
