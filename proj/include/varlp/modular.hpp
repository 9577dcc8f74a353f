#pragma once

#include <cmath>

#include "varlp/common.hpp"
#include "varlp/exponent_map.hpp"

namespace varlp {

/// Modular function rho_(p_n)(x) = sum_n |x_n|^{p_n}. Separable surrogate
/// for the non-separable norm of the variable exponent space.
inline double modular_rho(const ExponentMap& p, const Signal& x) {
    check_same_size(x.size(), p.size());
    double s = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) s += abs_pow(x[n], p[n]);
    return s;
}

/// Weighted modular rho_bar_(p_n)(x) = sum_n (1/p_n) |x_n|^{p_n}.
/// Reduces to (1/2)||x||_2^2 when p_n = 2.
inline double modular_rho_bar(const ExponentMap& p, const Signal& x) {
    check_same_size(x.size(), p.size());
    double s = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) s += abs_pow(x[n], p[n]) / p[n];
    return s;
}

/// Gateaux derivative of modular_rho: coefficients p_n sign(x_n)|x_n|^{p_n-1}.
inline DualElement j_rho(const ExponentMap& p, const Signal& x) {
    check_same_size(x.size(), p.size());
    DualElement out(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        out[n] = p[n] * signed_pow(x[n], p[n] - 1.0);
    return out;
}

/// Gateaux derivative of modular_rho_bar: coefficients sign(x_n)|x_n|^{p_n-1}.
inline DualElement j_rho_bar(const ExponentMap& p, const Signal& x) {
    check_same_size(x.size(), p.size());
    DualElement out(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        out[n] = signed_pow(x[n], p[n] - 1.0);
    return out;
}

/// Exact componentwise inverse of j_rho_bar: sign(v_n)|v_n|^{1/(p_n-1)}.
/// Throws OverflowError when a component leaves the double range, which
/// can happen for |v_n| > 1 and p_n close to 1.
inline Signal j_rho_bar_inverse(const ExponentMap& p, const DualElement& v) {
    check_same_size(v.size(), p.size());
    Signal out(v.size());
    for (std::size_t n = 0; n < v.size(); ++n) {
        double r = signed_pow(v[n], 1.0 / (p[n] - 1.0));
        if (!std::isfinite(r))
            throw OverflowError("inverse modular map overflow: |v|=" +
                                std::to_string(std::fabs(v[n])) + " with exponent 1/(" +
                                std::to_string(p[n]) + "-1)");
        out[n] = r;
    }
    return out;
}

} // namespace varlp
