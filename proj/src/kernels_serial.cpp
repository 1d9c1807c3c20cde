#include <algorithm>
#include <cmath>

#include "kernel_math.hpp"
#include "stereocolor/color_space.hpp"
#include "stereocolor/histogram.hpp"
#include "stereocolor/kernels.hpp"

namespace stereocolor::kernels::serial {

void clamp01(std::span<double> samples) {
    for (double& v : samples) v = std::clamp(v, 0.0, 1.0);
}

void affine(std::span<const double> in, std::span<double> out, const Mat3& m, const Vec3& b) {
    for (std::size_t i = 0; i + 2 < in.size(); i += 3) {
        const Vec3 p{in[i], in[i + 1], in[i + 2]};
        const Vec3 q = m * p + b;
        out[i] = q[0];
        out[i + 1] = q[1];
        out[i + 2] = q[2];
    }
}

void rgb_to_lab(std::span<const double> in, std::span<double> out) {
    for (std::size_t i = 0; i + 2 < in.size(); i += 3) {
        const Vec3 lab = color::rgb_to_lab({in[i], in[i + 1], in[i + 2]});
        out[i] = lab[0];
        out[i + 1] = lab[1];
        out[i + 2] = lab[2];
    }
}

void lab_to_rgb(std::span<const double> in, std::span<double> out) {
    for (std::size_t i = 0; i + 2 < in.size(); i += 3) {
        const Vec3 rgb = color::lab_to_rgb({in[i], in[i + 1], in[i + 2]});
        out[i] = rgb[0];
        out[i + 1] = rgb[1];
        out[i + 2] = rgb[2];
    }
}

Vec3 channel_mean(std::span<const double> pixels) {
    const std::size_t n = pixels.size() / 3;
    Vec3 total{};
    for (std::size_t start = 0; start < n; start += kReduceBlock) {
        const std::size_t end = std::min(n, start + kReduceBlock);
        Vec3 block{};
        for (std::size_t p = start; p < end; ++p)
            for (std::size_t c = 0; c < 3; ++c) block[c] += pixels[3 * p + c];
        total = total + block;
    }
    const double inv = 1.0 / static_cast<double>(n);
    return {total[0] * inv, total[1] * inv, total[2] * inv};
}

Mat3 covariance(std::span<const double> pixels, const Vec3& mean) {
    const std::size_t n = pixels.size() / 3;
    Mat3 total;
    for (std::size_t start = 0; start < n; start += kReduceBlock) {
        const std::size_t end = std::min(n, start + kReduceBlock);
        Mat3 block;
        for (std::size_t p = start; p < end; ++p) {
            const double d0 = pixels[3 * p] - mean[0];
            const double d1 = pixels[3 * p + 1] - mean[1];
            const double d2 = pixels[3 * p + 2] - mean[2];
            block(0, 0) += d0 * d0;
            block(0, 1) += d0 * d1;
            block(0, 2) += d0 * d2;
            block(1, 1) += d1 * d1;
            block(1, 2) += d1 * d2;
            block(2, 2) += d2 * d2;
        }
        total = total + block;
    }
    total(1, 0) = total(0, 1);
    total(2, 0) = total(0, 2);
    total(2, 1) = total(1, 2);
    return (1.0 / static_cast<double>(n)) * total;
}

void min_max(std::span<const double> values, Strided view, double& lo, double& hi) {
    lo = values[view.offset];
    hi = lo;
    for (std::size_t i = view.offset; i < values.size(); i += view.step) {
        lo = std::min(lo, values[i]);
        hi = std::max(hi, values[i]);
    }
}

std::vector<std::uint64_t> histogram(std::span<const double> values, Strided view, double lo, double hi, int bins) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(bins), 0);
    const double scale = bins / (hi - lo);
    for (std::size_t i = view.offset; i < values.size(); i += view.step) {
        const auto k = std::clamp(static_cast<long>(std::floor((values[i] - lo) * scale)), 0L, static_cast<long>(bins - 1));
        ++counts[static_cast<std::size_t>(k)];
    }
    return counts;
}

void map_values(std::span<const double> in, std::span<double> out, Strided view, const Transfer1D& transfer) {
    for (std::size_t i = view.offset; i < in.size(); i += view.step) out[i] = transfer(in[i]);
}

void luma(std::span<const double> rgb, std::span<double> out) {
    for (std::size_t p = 0; p < out.size(); ++p) out[p] = detail::luma601(rgb[3 * p], rgb[3 * p + 1], rgb[3 * p + 2]);
}

void filter_valid(std::span<const double> in, int width, int height, std::span<const double> taps,
                  std::span<double> out) {
    const int k = static_cast<int>(taps.size());
    const int ow = width - k + 1;
    const int oh = height - k + 1;
    std::vector<double> rows(static_cast<std::size_t>(ow) * static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int t = 0; t < k; ++t) acc += taps[static_cast<std::size_t>(t)] * in[static_cast<std::size_t>(y * width + x + t)];
            rows[static_cast<std::size_t>(y * ow + x)] = acc;
        }
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int t = 0; t < k; ++t) acc += taps[static_cast<std::size_t>(t)] * rows[static_cast<std::size_t>((y + t) * ow + x)];
            out[static_cast<std::size_t>(y * ow + x)] = acc;
        }
}

double ssim_mean(std::span<const double> a, std::span<const double> b, int width, int height,
                 std::span<const double> taps, double c1, double c2) {
    const std::size_t n = a.size();
    std::vector<double> aa(n), bb(n), ab(n);
    for (std::size_t i = 0; i < n; ++i) {
        aa[i] = a[i] * a[i];
        bb[i] = b[i] * b[i];
        ab[i] = a[i] * b[i];
    }
    const int k = static_cast<int>(taps.size());
    const std::size_t m = static_cast<std::size_t>(width - k + 1) * static_cast<std::size_t>(height - k + 1);
    std::vector<double> mu_a(m), mu_b(m), s_aa(m), s_bb(m), s_ab(m);
    filter_valid(a, width, height, taps, mu_a);
    filter_valid(b, width, height, taps, mu_b);
    filter_valid(aa, width, height, taps, s_aa);
    filter_valid(bb, width, height, taps, s_bb);
    filter_valid(ab, width, height, taps, s_ab);

    double total = 0.0;
    for (std::size_t start = 0; start < m; start += kReduceBlock) {
        const std::size_t end = std::min(m, start + kReduceBlock);
        double block = 0.0;
        for (std::size_t i = start; i < end; ++i)
            block += detail::ssim_at(mu_a[i], mu_b[i], s_aa[i], s_bb[i], s_ab[i], c1, c2);
        total += block;
    }
    return total / static_cast<double>(m);
}

void regrain_half_sweep(std::span<double> out, std::span<const double> source, std::span<const double> mapped,
                        std::span<const double> lambda, int width, int height, int parity) {
    for (int y = 0; y < height; ++y)
        for (int x = (y + parity) % 2; x < width; x += 2)
            for (int c = 0; c < 3; ++c)
                out[3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) +
                    static_cast<std::size_t>(c)] = detail::regrain_update(out, source, mapped, lambda, width, height, x, y, c);
}

}  // namespace stereocolor::kernels::serial
