#pragma once

#include <string_view>

#include "stereocolor/image.hpp"
#include "stereocolor/mat3.hpp"
#include "stereocolor/stats.hpp"

namespace stereocolor {

enum class ColorSpace { RGB, LAB };

/// p -> matrix * p + offset, applied in `space`.
struct LinearColorMap {
    Mat3 matrix = Mat3::identity();
    Vec3 offset{};
    ColorSpace space = ColorSpace::RGB;

    /// Applies the map to samples already expressed in `space`; no clamping.
    Image apply_raw(const Image& img) const;
};

enum class Decomposition { Cholesky, Sqrt, MongeKantorovitch };

std::string_view to_string(Decomposition d);

/// Eigenvalues below this make a target covariance non-invertible.
inline constexpr double kMinEigenvalue = 1e-8;

// Fitting. Each returns the map that moves target's moments onto reference's.

/// Per-channel mean/std transfer in CIELAB; channels with std <= 1e-6 only shift.
LinearColorMap fit_reinhard(const Image& target, const Image& reference);
/// Eigenbasis scale-rotate-shift in RGB. Throws NearSingularCovariance.
LinearColorMap fit_xiao(const Image& target, const Image& reference);
/// Covariance fitting in RGB. Throws NearSingularCovariance.
LinearColorMap fit_pitie_linear(const Image& target, const Image& reference, Decomposition decomposition);

/// T with T * target_cov * T^T = reference_cov for the chosen decomposition.
/// Throws NearSingularCovariance if target_cov has an eigenvalue below kMinEigenvalue.
Mat3 covariance_fitting_matrix(const Mat3& target_cov, const Mat3& reference_cov, Decomposition decomposition);

/// Xiao's transform U_r S_r S_t^-1 U_t^T. Same error contract.
Mat3 xiao_matrix(const Mat3& target_cov, const Mat3& reference_cov);

// Corrections. Output is in RGB, clamped to [0,1] once at the end.

Image reinhard_transfer(const Image& target, const Image& reference);
Image xiao_transfer(const Image& target, const Image& reference);
Image pitie_linear_transfer(const Image& target, const Image& reference,
                            Decomposition decomposition = Decomposition::MongeKantorovitch);

/// Unclamped RGB result of a fitted map (Lab maps are converted back without clamping).
Image apply_unclamped(const LinearColorMap& map, const Image& target_rgb);

}  // namespace stereocolor
