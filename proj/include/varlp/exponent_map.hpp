#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "varlp/common.hpp"

namespace varlp {

/// Exponents below 1 + 0.01 are rejected: the inverse modular map raises
/// to the power 1/(p-1), which blows up as p -> 1.
inline constexpr double kMinExponent = 1.01;

/// Per-coordinate exponent sequence (p_n) with cached bounds
/// p_minus = min_n p_n and p_plus = max_n p_n; parameterises the
/// variable exponent space the signal lives in. Exponents are stored
/// densely even when constant; `constant` only enables fast paths.
struct ExponentMap {
    std::vector<double> values;
    double p_minus = 0.0;
    double p_plus = 0.0;
    bool constant = false;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// Checks 1 < p_minus <= p_n <= p_plus < inf (with the 1.01 guard) and
/// computes the bounds. Throws ExponentOutOfRange otherwise.
inline ExponentMap validate_exponent_map(std::vector<double> raw) {
    if (raw.empty()) throw ExponentOutOfRange("exponent map must be nonempty");
    double lo = raw[0], hi = raw[0];
    for (double p : raw) {
        if (!std::isfinite(p) || p < kMinExponent)
            throw ExponentOutOfRange("exponent " + std::to_string(p) +
                                     " outside [" + std::to_string(kMinExponent) + ", inf)");
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    ExponentMap map;
    map.values = std::move(raw);
    map.p_minus = lo;
    map.p_plus = hi;
    map.constant = (lo == hi);
    return map;
}

inline ExponentMap constant_exponents(double p, std::size_t n) {
    return validate_exponent_map(std::vector<double>(n, p));
}

/// Conjugate exponent p* with 1/p + 1/p* = 1.
inline double conjugate_exponent(double p) { return p / (p - 1.0); }

} // namespace varlp
