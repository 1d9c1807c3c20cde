#include "stereocolor/global_transfer.hpp"

#include <cmath>
#include <sstream>

#include "stereocolor/color_space.hpp"
#include "stereocolor/errors.hpp"
#include "stereocolor/kernels.hpp"

namespace stereocolor {

namespace {

constexpr double kDegenerateStd = 1e-6;

void require_pixels(const Image& target, const Image& reference, const char* who) {
    if (target.empty() || reference.empty()) throw InvalidArgument(std::string(who) + ": empty image");
}

void require_invertible(const Mat3& target_cov) {
    const double smallest = eigen_symmetric(target_cov).values[2];
    if (smallest < kMinEigenvalue) {
        std::ostringstream msg;
        msg << "target covariance is near singular (smallest eigenvalue " << smallest << ")";
        throw NearSingularCovariance(msg.str());
    }
}

Mat3 regularized(const Mat3& cov) {
    const double smallest = eigen_symmetric(cov).values[2];
    if (smallest < kMinEigenvalue) return cov + kMinEigenvalue * Mat3::identity();
    return cov;
}

Mat3 symmetrized(const Mat3& a) { return 0.5 * (a + transpose(a)); }

LinearColorMap moment_map(const Mat3& t, const ColorStats& target, const ColorStats& reference) {
    LinearColorMap map;
    map.matrix = t;
    map.offset = reference.mean - t * target.mean;
    map.space = ColorSpace::RGB;
    return map;
}

}  // namespace

std::string_view to_string(Decomposition d) {
    switch (d) {
        case Decomposition::Cholesky:
            return "cholesky";
        case Decomposition::Sqrt:
            return "sqrt";
        case Decomposition::MongeKantorovitch:
            return "mk";
    }
    return "unknown";
}

Image LinearColorMap::apply_raw(const Image& img) const {
    Image out(img.width(), img.height());
    kernels::omp::affine(img.data(), out.data(), matrix, offset);
    return out;
}

Mat3 covariance_fitting_matrix(const Mat3& target_cov, const Mat3& reference_cov, Decomposition decomposition) {
    require_invertible(target_cov);
    const Mat3 ref = regularized(reference_cov);
    switch (decomposition) {
        case Decomposition::Cholesky:
            return cholesky(ref) * inverse(cholesky(target_cov));
        case Decomposition::Sqrt:
            return spd_sqrt(ref) * spd_inv_sqrt(target_cov);
        case Decomposition::MongeKantorovitch: {
            const Mat3 root_t = spd_sqrt(target_cov);
            const Mat3 inv_root_t = spd_inv_sqrt(target_cov);
            const Mat3 middle = spd_sqrt(symmetrized(root_t * ref * root_t));
            return symmetrized(inv_root_t * middle * inv_root_t);
        }
    }
    throw InvalidArgument("unknown decomposition");
}

Mat3 xiao_matrix(const Mat3& target_cov, const Mat3& reference_cov) {
    require_invertible(target_cov);
    const SymmetricEigen et = eigen_symmetric(target_cov);
    const SymmetricEigen er = eigen_symmetric(regularized(reference_cov));
    Vec3 scale{};
    for (std::size_t i = 0; i < 3; ++i) scale[i] = std::sqrt(std::max(er.values[i], 0.0)) / std::sqrt(et.values[i]);
    return er.vectors * Mat3::diagonal(scale) * transpose(et.vectors);
}

LinearColorMap fit_reinhard(const Image& target, const Image& reference) {
    require_pixels(target, reference, "reinhard");
    const ColorStats t = compute_stats(rgb_to_lab(target));
    const ColorStats r = compute_stats(rgb_to_lab(reference));
    LinearColorMap map;
    map.space = ColorSpace::LAB;
    Vec3 scale{1.0, 1.0, 1.0};
    for (std::size_t c = 0; c < 3; ++c)
        if (t.std[c] > kDegenerateStd) scale[c] = r.std[c] / t.std[c];
    map.matrix = Mat3::diagonal(scale);
    for (std::size_t c = 0; c < 3; ++c) map.offset[c] = r.mean[c] - scale[c] * t.mean[c];
    return map;
}

LinearColorMap fit_xiao(const Image& target, const Image& reference) {
    require_pixels(target, reference, "xiao");
    const ColorStats t = compute_stats(target);
    const ColorStats r = compute_stats(reference);
    return moment_map(xiao_matrix(t.cov, r.cov), t, r);
}

LinearColorMap fit_pitie_linear(const Image& target, const Image& reference, Decomposition decomposition) {
    require_pixels(target, reference, "pitie-linear");
    const ColorStats t = compute_stats(target);
    const ColorStats r = compute_stats(reference);
    return moment_map(covariance_fitting_matrix(t.cov, r.cov, decomposition), t, r);
}

Image apply_unclamped(const LinearColorMap& map, const Image& target_rgb) {
    if (map.space == ColorSpace::LAB) return lab_to_rgb_unclamped(map.apply_raw(rgb_to_lab(target_rgb)));
    return map.apply_raw(target_rgb);
}

Image reinhard_transfer(const Image& target, const Image& reference) {
    return clamped(apply_unclamped(fit_reinhard(target, reference), target));
}

Image xiao_transfer(const Image& target, const Image& reference) {
    return clamped(apply_unclamped(fit_xiao(target, reference), target));
}

Image pitie_linear_transfer(const Image& target, const Image& reference, Decomposition decomposition) {
    return clamped(apply_unclamped(fit_pitie_linear(target, reference, decomposition), target));
}

}  // namespace stereocolor
