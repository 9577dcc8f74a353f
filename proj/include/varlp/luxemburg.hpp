#pragma once

#include <algorithm>
#include <cmath>

#include "varlp/common.hpp"
#include "varlp/exponent_map.hpp"
#include "varlp/modular.hpp"

namespace varlp {

namespace detail {

/// rho_(p_n)(x / lambda), evaluated without forming the scaled vector.
inline double modular_at_scale(const ExponentMap& p, const Signal& x, double lambda) {
    double s = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        s += abs_pow(x[n] / lambda, p[n]);
        if (!std::isfinite(s)) return s;
    }
    return s;
}

/// Classic l^p norm, scaled by max|x| to dodge overflow.
inline double lp_norm(double p, const Signal& x) {
    double m = max_abs(x);
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (double v : x) s += abs_pow(v / m, p);
    return m * std::pow(s, 1.0 / p);
}

} // namespace detail

/// Luxemburg norm ||x|| = inf{ lambda > 0 : rho_(p_n)(x/lambda) <= 1 }.
///
/// For a constant map this is the closed-form l^p norm. Otherwise
/// g(lambda) = rho(x/lambda) is strictly decreasing for x != 0, so
/// g(lambda) = 1 is solved by bisection on the bracket
/// [max|x| / d^{1/p_-}, max|x| * d^{1/p_-}] (d = dimension), which
/// always encloses the root; the bracket is expanded geometrically as a
/// safety net. Absolute tolerance 1e-12 on lambda, at most 200 steps.
inline double luxemburg_norm(const ExponentMap& p, const Signal& x) {
    check_same_size(x.size(), p.size());
    double m = max_abs(x);
    if (m == 0.0) return 0.0;
    if (p.constant) return detail::lp_norm(p.p_minus, x);

    double spread = std::pow(static_cast<double>(x.size()), 1.0 / p.p_minus);
    double lo = m / spread;
    double hi = m * spread;
    while (detail::modular_at_scale(p, x, lo) < 1.0 && lo > 1e-300) lo *= 0.5;
    while (detail::modular_at_scale(p, x, hi) > 1.0 && hi < 1e300) hi *= 2.0;

    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval at rounding resolution
        if (detail::modular_at_scale(p, x, mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace varlp
