#pragma once

#include "stereocolor/image.hpp"
#include "stereocolor/mat3.hpp"

namespace stereocolor {

/// First and second color moments of an image, treated as a 3D point cloud.
struct ColorStats {
    Vec3 mean{};
    Mat3 cov{};  // population covariance (1/N)
    Vec3 std{};  // sqrt of the diagonal of cov
};

/// Two-pass mean / covariance. Throws InvalidArgument on an empty image.
ColorStats compute_stats(const Image& img);

}  // namespace stereocolor
