#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "varlp/common.hpp"

namespace varlp {

/// PSNR reported when the mean squared error is exactly zero.
inline constexpr double kPsnrCap = 300.0;

inline double mae(const Signal& x, const Signal& ref) {
    check_same_size(x.size(), ref.size());
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::fabs(x[i] - ref[i]);
    return s / static_cast<double>(x.size());
}

/// 20 log10(peak) - 10 log10(mse), peak = max(ref). Capped at 300 dB
/// for identical images.
inline double psnr(const Signal& x, const Signal& ref) {
    check_same_size(x.size(), ref.size());
    double mse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - ref[i];
        mse += d * d;
    }
    mse /= static_cast<double>(x.size());
    if (mse == 0.0) return kPsnrCap;
    double peak = *std::max_element(ref.begin(), ref.end());
    return 20.0 * std::log10(peak) - 10.0 * std::log10(mse);
}

namespace detail {

/// 11-tap Gaussian window, sigma 1.5, normalised to sum 1.
inline const std::vector<double>& ssim_window() {
    static const std::vector<double> w = [] {
        std::vector<double> v(11);
        double sum = 0.0;
        for (int i = 0; i < 11; ++i) {
            double d = static_cast<double>(i - 5);
            v[i] = std::exp(-d * d / (2.0 * 1.5 * 1.5));
            sum += v[i];
        }
        for (double& x : v) x /= sum;
        return v;
    }();
    return w;
}

/// Separable valid-region filtering: output is (side-10) x (side-10).
inline std::vector<double> ssim_filter(const std::vector<double>& img, std::size_t side) {
    const auto& w = ssim_window();
    std::size_t out_side = side - 10;
    std::vector<double> rows_filtered(side * out_side);
    for (std::size_t r = 0; r < side; ++r)
        for (std::size_t c = 0; c < out_side; ++c) {
            double s = 0.0;
            for (std::size_t k = 0; k < 11; ++k) s += w[k] * img[r * side + c + k];
            rows_filtered[r * out_side + c] = s;
        }
    std::vector<double> out(out_side * out_side);
    for (std::size_t r = 0; r < out_side; ++r)
        for (std::size_t c = 0; c < out_side; ++c) {
            double s = 0.0;
            for (std::size_t k = 0; k < 11; ++k) s += w[k] * rows_filtered[(r + k) * out_side + c];
            out[r * out_side + c] = s;
        }
    return out;
}

} // namespace detail

/// Mean structural similarity over an 11x11 Gaussian window (sigma 1.5),
/// C1 = (0.01 L)^2, C2 = (0.03 L)^2 with the dynamic range
/// L = max(ref) - min(ref) taken from the reference image (which makes
/// ssim(x, ref) asymmetric in its arguments). Inputs are square images,
/// side >= 11; windows are evaluated on the valid interior only.
inline double ssim(const Signal& x, const Signal& ref) {
    check_same_size(x.size(), ref.size());
    std::size_t side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(x.size()))));
    if (side * side != x.size())
        throw DimensionMismatch("ssim requires square images");
    if (side < 11) throw DimensionMismatch("ssim requires side >= 11");

    auto [lo_it, hi_it] = std::minmax_element(ref.begin(), ref.end());
    double range = *hi_it - *lo_it;
    double c1 = (0.01 * range) * (0.01 * range);
    double c2 = (0.03 * range) * (0.03 * range);

    std::vector<double> xx(x.size()), rr(x.size()), xr(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xx[i] = x[i] * x[i];
        rr[i] = ref[i] * ref[i];
        xr[i] = x[i] * ref[i];
    }
    auto mu_x = detail::ssim_filter(x, side);
    auto mu_r = detail::ssim_filter(ref, side);
    auto m_xx = detail::ssim_filter(xx, side);
    auto m_rr = detail::ssim_filter(rr, side);
    auto m_xr = detail::ssim_filter(xr, side);

    double total = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        double var_x = m_xx[i] - mu_x[i] * mu_x[i];
        double var_r = m_rr[i] - mu_r[i] * mu_r[i];
        double cov = m_xr[i] - mu_x[i] * mu_r[i];
        double num = (2.0 * mu_x[i] * mu_r[i] + c1) * (2.0 * cov + c2);
        double den = (mu_x[i] * mu_x[i] + mu_r[i] * mu_r[i] + c1) * (var_x + var_r + c2);
        // den vanishes only for an all-zero constant reference (L = 0)
        total += den == 0.0 ? (num == 0.0 ? 1.0 : 0.0) : num / den;
    }
    return total / static_cast<double>(mu_x.size());
}

struct MetricsRecord {
    double mae = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
};

inline MetricsRecord compute_metrics(const Signal& x, const Signal& ref) {
    return MetricsRecord{mae(x, ref), psnr(x, ref), ssim(x, ref)};
}

} // namespace varlp
