#pragma once

#include <cmath>

#include "varlp/common.hpp"
#include "varlp/exponent_map.hpp"
#include "varlp/luxemburg.hpp"

namespace varlp {

/// r-gauged duality map of l^p: coefficients
/// ||x||_p^{r-p} sign(x_n)|x_n|^{p-1}. Its inverse is the same map with
/// the conjugate exponents (p*, r*). Zero maps to zero by convention.
inline DualElement duality_map_const(double p, double r, const Signal& x) {
    DualElement out(x.size(), 0.0);
    double norm = detail::lp_norm(p, x);
    if (norm == 0.0) return out;
    double factor = (r == p) ? 1.0 : std::pow(norm, r - p);
    for (std::size_t n = 0; n < x.size(); ++n)
        out[n] = factor * signed_pow(x[n], p - 1.0);
    return out;
}

/// r-gauged duality map of the variable exponent space: coefficients
///
///   [ sum_m p_m |x_m|^{p_m} / ||x||^{p_m} ]^{-1}
///       * p_n sign(x_n)|x_n|^{p_n-1} / ||x||^{p_n-r},
///
/// with ||x|| the Luxemburg norm. Costly (one norm solve per call) and
/// only exact up to the non-isometric duality of the space; the solvers
/// use the modular derivatives instead. Zero maps to zero by convention.
inline DualElement duality_map_varexp(const ExponentMap& p, double r, const Signal& x) {
    check_same_size(x.size(), p.size());
    DualElement out(x.size(), 0.0);
    double norm = luxemburg_norm(p, x);
    if (norm == 0.0) return out;
    // |x_n|^{p_n} / ||x||^{p_n} evaluated as (|x_n|/||x||)^{p_n} so the
    // scaled terms stay near unit magnitude.
    double denom = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n)
        denom += p[n] * abs_pow(x[n] / norm, p[n]);
    double gauge = std::pow(norm, r - 1.0);
    for (std::size_t n = 0; n < x.size(); ++n)
        out[n] = p[n] * signed_pow(x[n] / norm, p[n] - 1.0) * gauge / denom;
    return out;
}

} // namespace varlp
