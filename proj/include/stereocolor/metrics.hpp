#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stereocolor/image.hpp"

namespace stereocolor {

/// PSNR in dB over all RGB samples jointly with peak 1.0. Identical inputs give
/// +infinity. Throws DimensionMismatch.
double psnr(const Image& a, const Image& b);

struct SsimParams {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

/// Normalized 1D Gaussian taps; the 2D window is their outer product.
std::vector<double> gaussian_taps(int size, double sigma);

/// Rec. 601 luma plane of an RGB image.
std::vector<double> luma_plane(const Image& img);

/// Mean single-scale SSIM on luma over every fully covered window position.
/// Throws DimensionMismatch, or TooSmall when min(width, height) < window.
double ssim(const Image& a, const Image& b, const SsimParams& params = {});

struct MetricsReport {
    double psnr_db = 0.0;  // may be +infinity
    double ssim = 0.0;
    std::optional<double> elapsed_ms;
};

MetricsReport evaluate_pair(const Image& corrected, const Image& ground_truth);

/// A correction: (target, reference) -> corrected target.
using CorrectionFn = std::function<Image(const Image& target, const Image& reference)>;

struct TimingResult {
    double min_ms = 0.0;
    std::vector<double> samples_ms;  // one per counted repeat
};

/// Wall-clock time of `method` on the pair, excluding any I/O. Runs an extra,
/// uncounted call first when `warmup` is set. Requires repeats >= 1.
TimingResult time_method(const CorrectionFn& method, const Stereopair& pair, int repeats = 3, bool warmup = false);

}  // namespace stereocolor
