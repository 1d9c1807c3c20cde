#pragma once

// Data-parallel kernels. `omp` is what the library calls; `serial` is the plain-loop
// reference the tests and the benchmark compare it against. Both backends reduce
// in fixed-size blocks summed in block order, so their results are bit-identical
// and independent of the thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stereocolor/mat3.hpp"

namespace stereocolor {

class Transfer1D;

namespace kernels {

/// Pixels per reduction block.
inline constexpr std::size_t kReduceBlock = 4096;

/// Samples of one channel (or a plain scalar sequence) inside a larger buffer.
struct Strided {
    std::size_t offset = 0;
    std::size_t step = 1;

    std::size_t count(std::size_t total) const { return total > offset ? (total - offset + step - 1) / step : 0; }
};

#define STEREOCOLOR_KERNEL_DECLS                                                                                   \
    void clamp01(std::span<double> samples);                                                                       \
    /* out = m * p + b for every interleaved pixel p; in and out may alias */                                     \
    void affine(std::span<const double> in, std::span<double> out, const Mat3& m, const Vec3& b);                 \
    void rgb_to_lab(std::span<const double> in, std::span<double> out);                                           \
    /* unclamped */                                                                                                \
    void lab_to_rgb(std::span<const double> in, std::span<double> out);                                           \
    Vec3 channel_mean(std::span<const double> pixels);                                                             \
    /* population covariance about `mean` */                                                                       \
    Mat3 covariance(std::span<const double> pixels, const Vec3& mean);                                             \
    void min_max(std::span<const double> values, Strided view, double& lo, double& hi);                            \
    std::vector<std::uint64_t> histogram(std::span<const double> values, Strided view, double lo, double hi,       \
                                         int bins);                                                                \
    void map_values(std::span<const double> in, std::span<double> out, Strided view, const Transfer1D& transfer); \
    /* Rec. 601 luma of interleaved RGB */                                                                         \
    void luma(std::span<const double> rgb, std::span<double> out);                                                 \
    /* separable correlation keeping only fully-covered positions; out is (w-k+1) x (h-k+1) */                     \
    void filter_valid(std::span<const double> in, int width, int height, std::span<const double> taps,            \
                      std::span<double> out);                                                                      \
    /* mean of the local SSIM map of two single-channel images */                                                  \
    double ssim_mean(std::span<const double> a, std::span<const double> b, int width, int height,                 \
                     std::span<const double> taps, double c1, double c2);                                          \
    /* one red-black Gauss-Seidel half sweep over pixels with (x + y) % 2 == parity */                             \
    void regrain_half_sweep(std::span<double> out, std::span<const double> source, std::span<const double> mapped, \
                            std::span<const double> lambda, int width, int height, int parity);

namespace serial {
STEREOCOLOR_KERNEL_DECLS
}  // namespace serial

namespace omp {
STEREOCOLOR_KERNEL_DECLS
}  // namespace omp

#undef STEREOCOLOR_KERNEL_DECLS

/// Cap OpenMP threads at STEREOCOLOR_THREADS when set. Returns the active thread count.
int apply_thread_cap();

}  // namespace kernels
}  // namespace stereocolor
