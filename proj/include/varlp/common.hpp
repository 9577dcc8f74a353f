#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace varlp {

/// A finite real vector: an image in lexicographic pixel order, or a
/// sinogram in angle-major order.
using Signal = std::vector<double>;

/// Coefficient sequence of a dual-space element; same length as the
/// primal signal it pairs with.
using DualElement = std::vector<double>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    DimensionMismatch(std::size_t got, std::size_t want)
        : Error("dimension mismatch: got " + std::to_string(got) + ", expected " +
                std::to_string(want)) {}
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct ExponentOutOfRange : Error {
    using Error::Error;
};

struct OverflowError : Error {
    using Error::Error;
};

struct GeometryInvalid : Error {
    using Error::Error;
};

struct PartitionInvalid : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

struct ConfigInvalid : Error {
    using Error::Error;
};

struct FileError : Error {
    using Error::Error;
};

struct MismatchedLogs : Error {
    using Error::Error;
};

struct SideTooSmall : Error {
    using Error::Error;
};

inline void check_same_size(std::size_t got, std::size_t want) {
    if (got != want) throw DimensionMismatch(got, want);
}

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

/// sign(x) * |x|^e with underflow-to-zero below 1e-300, so that tiny
/// magnitudes never reach log-domain traps. Exponents 1 and 2 are kept
/// exact, which makes every map collapse bit-for-bit onto its Hilbert
/// counterpart when all exponents equal 2.
inline double abs_pow(double x, double e) {
    double a = std::fabs(x);
    if (a < 1e-300) return 0.0;
    if (e == 1.0) return a;
    if (e == 2.0) return a * a;
    return std::pow(a, e);
}

inline double signed_pow(double x, double e) {
    double r = abs_pow(x, e);
    return x < 0.0 ? -r : r;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    check_same_size(a.size(), b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

inline double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::fabs(x));
    return m;
}

} // namespace varlp
