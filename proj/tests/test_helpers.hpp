#pragma once

// Shared independent oracles for the test suites: dense helpers, a
// Jacobi eigensolver (spectral-norm reference), and central finite
// differences. None of these share code with the library paths they
// check.

#include <cmath>
#include <functional>
#include <vector>

#include "varlp/common.hpp"
#include "varlp/rng.hpp"

namespace testutil {

using Vec = std::vector<double>;
using Mat = std::vector<double>; // row-major

inline Vec random_vector(std::size_t n, varlp::Rng& rng, double lo = -3.0, double hi = 3.0) {
    Vec v(n);
    for (double& x : v) x = lo + (hi - lo) * rng.uniform();
    return v;
}

inline Mat random_matrix(std::size_t rows, std::size_t cols, varlp::Rng& rng) {
    Mat m(rows * cols);
    for (double& x : m) x = rng.normal(0.0, 1.0);
    return m;
}

inline Vec matvec(const Mat& m, std::size_t rows, std::size_t cols, const Vec& x) {
    Vec y(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) y[r] += m[r * cols + c] * x[c];
    return y;
}

/// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
inline double jacobi_max_eigenvalue(Mat a, std::size_t n) {
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::fabs(apq) < 1e-300) continue;
                double theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    double best = a[0];
    for (std::size_t i = 1; i < n; ++i) best = std::max(best, a[i * n + i]);
    return best;
}

/// Spectral norm of a dense rows x cols matrix via Jacobi on A^T A.
inline double spectral_norm(const Mat& m, std::size_t rows, std::size_t cols) {
    Mat ata(cols * cols, 0.0);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < rows; ++r) s += m[r * cols + i] * m[r * cols + j];
            ata[i * cols + j] = s;
        }
    return std::sqrt(std::max(0.0, jacobi_max_eigenvalue(std::move(ata), cols)));
}

/// Central-difference gradient of a scalar functional.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, Vec x, double eps = 1e-6) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double xi = x[i];
        x[i] = xi + eps;
        double fp = f(x);
        x[i] = xi - eps;
        double fm = f(x);
        x[i] = xi;
        g[i] = (fp - fm) / (2.0 * eps);
    }
    return g;
}

inline double rel_diff(const Vec& a, const Vec& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - b[i]) * (a[i] - b[i]);
        den += b[i] * b[i];
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

} // namespace testutil
