#pragma once

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "varlp/geometry.hpp"
#include "varlp/linear_operator.hpp"

namespace varlp {

namespace detail {

/// Accumulates the exact intersection lengths of the segment a->b with
/// the N x N pixel grid on [-N*h/2, N*h/2]^2 (Siddon-style traversal).
/// Pixel index is row-major with row 0 at the top (y = +).
inline void trace_ray(double ax, double ay, double bx, double by, std::size_t n,
                      double h, std::vector<std::pair<std::uint32_t, double>>& out) {
    const double half = 0.5 * static_cast<double>(n) * h;
    const double xmin = -half, ymin = -half;
    const double dx = bx - ax, dy = by - ay;
    const double ray_len = std::hypot(dx, dy);
    if (ray_len == 0.0) return;

    // clip [0,1] against both slabs
    double t0 = 0.0, t1 = 1.0;
    auto clip = [&](double a0, double d, double lo, double hi) {
        if (d == 0.0) return a0 >= lo && a0 <= hi;
        double ta = (lo - a0) / d, tb = (hi - a0) / d;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        return true;
    };
    if (!clip(ax, dx, xmin, half) || !clip(ay, dy, ymin, half)) return;
    if (t0 >= t1) return;

    auto cell = [&](double pos, double lo) {
        long i = static_cast<long>(std::floor((pos - lo) / h));
        if (i < 0) i = 0;
        if (i >= static_cast<long>(n)) i = static_cast<long>(n) - 1;
        return i;
    };
    long ix = cell(ax + t0 * dx, xmin);
    long iy = cell(ay + t0 * dy, ymin);

    const double inf = std::numeric_limits<double>::infinity();
    long step_x = dx > 0.0 ? 1 : -1, step_y = dy > 0.0 ? 1 : -1;
    double dtx = dx != 0.0 ? h / std::fabs(dx) : inf;
    double dty = dy != 0.0 ? h / std::fabs(dy) : inf;
    double tx = dx > 0.0   ? (xmin + (ix + 1) * h - ax) / dx
                : dx < 0.0 ? (xmin + ix * h - ax) / dx
                           : inf;
    double ty = dy > 0.0   ? (ymin + (iy + 1) * h - ay) / dy
                : dy < 0.0 ? (ymin + iy * h - ay) / dy
                           : inf;

    double tcur = t0;
    while (tcur < t1 - 1e-12) {
        double tn = std::min(std::min(tx, ty), t1);
        if (tn > tcur && ix >= 0 && iy >= 0 && ix < static_cast<long>(n) &&
            iy < static_cast<long>(n)) {
            std::uint32_t pixel =
                static_cast<std::uint32_t>((static_cast<long>(n) - 1 - iy) * static_cast<long>(n) + ix);
            out.emplace_back(pixel, (tn - tcur) * ray_len);
        }
        if (tn >= t1) break;
        if (tx <= ty) {
            ix += step_x;
            tx += dtx;
        } else {
            iy += step_y;
            ty += dty;
        }
        tcur = tn;
    }
}

} // namespace detail

/// Discrete Radon transform for the parallel-beam geometry: one ray per
/// detector element through the detector-cell centre, weights equal to
/// the exact pixel intersection lengths. The adjoint is the transpose
/// of these weights, so the pair is matched by construction.
///
/// Ray (angle theta, offset s) is the line {s*(cos t, sin t) + u*(-sin t, cos t)}.
inline LinearOperator radon_build(const Geometry& g) {
    validate_geometry(g);
    const double deg = 3.141592653589793238462643383279502884 / 180.0;
    const double span = static_cast<double>(g.image_side) * g.pixel_size;

    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(g.rows());
    for (std::size_t a = 0; a < g.num_angles; ++a) {
        double theta = (g.angle_start + static_cast<double>(a) * g.angle_step) * deg;
        double ct = std::cos(theta), st = std::sin(theta);
        for (std::size_t d = 0; d < g.num_detectors; ++d) {
            double s = (static_cast<double>(d) -
                        0.5 * (static_cast<double>(g.num_detectors) - 1.0)) *
                       g.detector_spacing;
            double cx = s * ct, cy = s * st;
            auto& row = rows[a * g.num_detectors + d];
            detail::trace_ray(cx + span * st, cy - span * ct, cx - span * st,
                              cy + span * ct, g.image_side, g.pixel_size, row);
        }
    }
    return LinearOperator::sparse(g.rows(), g.cols(), rows, g.num_angles,
                                  g.num_detectors);
}

} // namespace varlp
