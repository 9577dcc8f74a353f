#pragma once

#include <cstddef>

#include "varlp/common.hpp"

namespace varlp {

/// Piecewise-constant sparse test image on [0,1]: zero background, an
/// elliptical ring, two disks and a small rectangle at distinct
/// intensities. Deterministic for a given side; background covers well
/// over half the pixels. Throws SideTooSmall below 16.
inline Signal generate_phantom(std::size_t side) {
    if (side < 16) throw SideTooSmall("phantom side must be >= 16");
    Signal img(side * side, 0.0);
    auto in_ellipse = [](double u, double v, double cu, double cv, double a, double b) {
        double du = (u - cu) / a, dv = (v - cv) / b;
        return du * du + dv * dv <= 1.0;
    };
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t c = 0; c < side; ++c) {
            double u = 2.0 * (static_cast<double>(c) + 0.5) / static_cast<double>(side) - 1.0;
            double v = 1.0 - 2.0 * (static_cast<double>(r) + 0.5) / static_cast<double>(side);
            double val = 0.0;
            if (in_ellipse(u, v, 0.0, 0.0, 0.72, 0.58) &&
                !in_ellipse(u, v, 0.0, 0.0, 0.60, 0.46))
                val = 1.0; // ring
            else if (in_ellipse(u, v, -0.22, 0.18, 0.16, 0.16))
                val = 0.8; // large disk
            else if (in_ellipse(u, v, 0.25, -0.20, 0.13, 0.13))
                val = 0.6; // small disk
            else if (std::fabs(u - 0.10) <= 0.12 && std::fabs(v - 0.30) <= 0.08)
                val = 0.4; // rectangle
            img[r * side + c] = val;
        }
    }
    return img;
}

} // namespace varlp
