#pragma once

// Per-element arithmetic shared by the serial and OpenMP kernel backends.

#include <cstddef>
#include <span>

namespace stereocolor::kernels::detail {

inline double luma601(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

inline double ssim_at(double mu_a, double mu_b, double aa, double bb, double ab, double c1, double c2) {
    const double mu_aa = mu_a * mu_a;
    const double mu_bb = mu_b * mu_b;
    const double mu_ab = mu_a * mu_b;
    const double var_a = aa - mu_aa;
    const double var_b = bb - mu_bb;
    const double cov = ab - mu_ab;
    return ((2.0 * mu_ab + c1) * (2.0 * cov + c2)) / ((mu_aa + mu_bb + c1) * (var_a + var_b + c2));
}

/// Exact minimizer of the regrain energy over one sample with its neighbours fixed.
inline double regrain_update(std::span<const double> out, std::span<const double> source,
                             std::span<const double> mapped, std::span<const double> lambda, int width, int height,
                             int x, int y, int c) {
    const auto w = static_cast<std::size_t>(width);
    const std::size_t p = static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x);
    const std::size_t i = 3 * p + static_cast<std::size_t>(c);
    double acc = 0.0;
    int neighbours = 0;
    const auto visit = [&](std::size_t q) {
        const std::size_t j = 3 * q + static_cast<std::size_t>(c);
        acc += out[j] + (source[i] - source[j]);
        ++neighbours;
    };
    if (x > 0) visit(p - 1);
    if (x + 1 < width) visit(p + 1);
    if (y > 0) visit(p - w);
    if (y + 1 < height) visit(p + w);
    const double l = lambda[p];
    return (acc + l * mapped[i]) / (neighbours + l);
}

}  // namespace stereocolor::kernels::detail
