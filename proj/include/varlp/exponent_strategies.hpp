#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "varlp/common.hpp"
#include "varlp/exponent_map.hpp"
#include "varlp/linear_operator.hpp"
#include "varlp/solver.hpp"

namespace varlp {

/// Target exponent range for min-max interpolation of a source signal.
struct InterpolationSpec {
    double lower = 0.0;
    double upper = 0.0;
};

inline void validate_interpolation_spec(const InterpolationSpec& spec) {
    if (!std::isfinite(spec.lower) || !std::isfinite(spec.upper) ||
        spec.lower < kMinExponent || spec.upper < spec.lower)
        throw ExponentOutOfRange("interpolation bounds must satisfy 1.01 <= lower <= upper");
}

namespace detail {

/// lower + (upper - lower) * (|s_n| - min|s|) / (max|s| - min|s|);
/// a flat source carries no spatial information and maps to the
/// constant lower bound (the sparse choice).
inline ExponentMap interpolate_exponents(const Signal& source, const InterpolationSpec& spec) {
    validate_interpolation_spec(spec);
    if (source.empty()) throw ExponentOutOfRange("empty interpolation source");
    double lo = std::fabs(source[0]), hi = lo;
    for (double v : source) {
        double a = std::fabs(v);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    std::vector<double> values(source.size(), spec.lower);
    if (hi > lo) {
        double scale = (spec.upper - spec.lower) / (hi - lo);
        for (std::size_t n = 0; n < source.size(); ++n)
            values[n] = spec.lower + scale * (std::fabs(source[n]) - lo);
    }
    return validate_exponent_map(std::move(values));
}

} // namespace detail

/// Approximate reconstruction used to seed the exponent maps: a few
/// epochs of constant-step Banach SGD in l^{p_const}, from the zero image.
inline Signal pilot_reconstruction(const LinearOperator& A, const Signal& y,
                                   double p_const, std::size_t epochs, double mu,
                                   std::size_t num_subsets, std::uint64_t seed) {
    SolverConfig cfg;
    cfg.algorithm = Algorithm::sgd_p;
    cfg.p = p_const;
    cfg.q = p_const;
    cfg.schedule = constant_schedule(mu);
    cfg.num_subsets = num_subsets;
    cfg.epochs = epochs;
    cfg.seed = seed;
    if (epochs == 0) return Signal(A.cols(), 0.0);
    return run(cfg, A, y).x;
}

/// Pixel-wise solution-space exponents: linear min-max interpolation of
/// the pilot magnitudes into [lower, upper]. Brighter pixels get larger
/// exponents.
inline ExponentMap build_p_map(const Signal& pilot, const InterpolationSpec& spec) {
    return detail::interpolate_exponents(pilot, spec);
}

/// Data-space exponents: the p_map values are forward-projected as an
/// image through A and the result is interpolated into [lower, upper].
inline ExponentMap build_q_map(const LinearOperator& A, const ExponentMap& p_map,
                               const InterpolationSpec& spec) {
    check_same_size(p_map.size(), A.cols());
    Signal projected = A.apply(p_map.values);
    return detail::interpolate_exponents(projected, spec);
}

/// Refresh of (p_n) from the current iterate; same formula as
/// build_p_map. Callers must re-initialise any dual iterate under the
/// new map (run's adapt hook does).
inline ExponentMap adapt_p_map(const Signal& current, const InterpolationSpec& spec) {
    return detail::interpolate_exponents(current, spec);
}

} // namespace varlp
