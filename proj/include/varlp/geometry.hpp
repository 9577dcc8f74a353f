#pragma once

#include <cstddef>

#include "varlp/common.hpp"

namespace varlp {

/// 2D parallel-beam scan description. Angles are
/// angle_start + k * angle_step degrees for k = 0..num_angles-1; the
/// detector array is centred on the rotation axis. The image is
/// image_side x image_side pixels of width pixel_size, centred at the
/// origin. Sinogram rows are angle-major: row = angle * num_detectors + det.
struct Geometry {
    std::size_t image_side = 0;
    double pixel_size = 1.0;
    std::size_t num_angles = 0;
    double angle_start = 0.0; // degrees
    double angle_step = 1.0;  // degrees
    std::size_t num_detectors = 0;
    double detector_spacing = 1.0;

    std::size_t rows() const { return num_angles * num_detectors; }
    std::size_t cols() const { return image_side * image_side; }
};

inline void validate_geometry(const Geometry& g) {
    if (g.image_side < 1) throw GeometryInvalid("image_side must be >= 1");
    if (g.num_angles < 1) throw GeometryInvalid("num_angles must be >= 1");
    if (g.num_detectors < 1) throw GeometryInvalid("num_detectors must be >= 1");
    if (!(g.pixel_size > 0.0)) throw GeometryInvalid("pixel_size must be > 0");
    if (!(g.detector_spacing > 0.0)) throw GeometryInvalid("detector_spacing must be > 0");
}

} // namespace varlp
