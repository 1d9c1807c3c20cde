#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "kernel_math.hpp"
#include "stereocolor/color_space.hpp"
#include "stereocolor/histogram.hpp"
#include "stereocolor/kernels.hpp"

namespace stereocolor::kernels {

namespace {

using Index = std::ptrdiff_t;

Index as_index(std::size_t n) { return static_cast<Index>(n); }

std::size_t block_count(std::size_t n) { return (n + kReduceBlock - 1) / kReduceBlock; }

}  // namespace

int apply_thread_cap() {
    if (const char* env = std::getenv("STEREOCOLOR_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1) omp_set_num_threads(static_cast<int>(std::min<long>(cap, omp_get_num_procs())));
    }
    return omp_get_max_threads();
}

namespace omp {

void clamp01(std::span<double> samples) {
    const Index n = as_index(samples.size());
#pragma omp parallel for schedule(static)
    for (Index i = 0; i < n; ++i) samples[static_cast<std::size_t>(i)] = std::clamp(samples[static_cast<std::size_t>(i)], 0.0, 1.0);
}

void affine(std::span<const double> in, std::span<double> out, const Mat3& m, const Vec3& b) {
    const Index n = as_index(in.size() / 3);
    // Private copies: `out` may alias, so shared references would be reloaded per pixel.
    const Mat3 mat = m;
    const Vec3 bias = b;
    const double* src = in.data();
    double* dst = out.data();
#pragma omp parallel for schedule(static) firstprivate(mat, bias, src, dst)
    for (Index p = 0; p < n; ++p) {
        const std::size_t i = 3 * static_cast<std::size_t>(p);
        const Vec3 q = mat * Vec3{src[i], src[i + 1], src[i + 2]} + bias;
        dst[i] = q[0];
        dst[i + 1] = q[1];
        dst[i + 2] = q[2];
    }
}

void rgb_to_lab(std::span<const double> in, std::span<double> out) {
    const Index n = as_index(in.size() / 3);
#pragma omp parallel for schedule(static)
    for (Index p = 0; p < n; ++p) {
        const std::size_t i = 3 * static_cast<std::size_t>(p);
        const Vec3 lab = color::rgb_to_lab({in[i], in[i + 1], in[i + 2]});
        out[i] = lab[0];
        out[i + 1] = lab[1];
        out[i + 2] = lab[2];
    }
}

void lab_to_rgb(std::span<const double> in, std::span<double> out) {
    const Index n = as_index(in.size() / 3);
#pragma omp parallel for schedule(static)
    for (Index p = 0; p < n; ++p) {
        const std::size_t i = 3 * static_cast<std::size_t>(p);
        const Vec3 rgb = color::lab_to_rgb({in[i], in[i + 1], in[i + 2]});
        out[i] = rgb[0];
        out[i + 1] = rgb[1];
        out[i + 2] = rgb[2];
    }
}

Vec3 channel_mean(std::span<const double> pixels) {
    const std::size_t n = pixels.size() / 3;
    const std::size_t blocks = block_count(n);
    std::vector<Vec3> partial(blocks);
#pragma omp parallel for schedule(static)
    for (Index bi = 0; bi < as_index(blocks); ++bi) {
        const std::size_t start = static_cast<std::size_t>(bi) * kReduceBlock;
        const std::size_t end = std::min(n, start + kReduceBlock);
        Vec3 block{};
        for (std::size_t p = start; p < end; ++p)
            for (std::size_t c = 0; c < 3; ++c) block[c] += pixels[3 * p + c];
        partial[static_cast<std::size_t>(bi)] = block;
    }
    Vec3 total{};
    for (const Vec3& b : partial) total = total + b;
    const double inv = 1.0 / static_cast<double>(n);
    return {total[0] * inv, total[1] * inv, total[2] * inv};
}

Mat3 covariance(std::span<const double> pixels, const Vec3& mean) {
    const std::size_t n = pixels.size() / 3;
    const std::size_t blocks = block_count(n);
    std::vector<Mat3> partial(blocks);
#pragma omp parallel for schedule(static)
    for (Index bi = 0; bi < as_index(blocks); ++bi) {
        const std::size_t start = static_cast<std::size_t>(bi) * kReduceBlock;
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
        partial[static_cast<std::size_t>(bi)] = block;
    }
    Mat3 total;
    for (const Mat3& b : partial) total = total + b;
    total(1, 0) = total(0, 1);
    total(2, 0) = total(0, 2);
    total(2, 1) = total(1, 2);
    return (1.0 / static_cast<double>(n)) * total;
}

void min_max(std::span<const double> values, Strided view, double& lo, double& hi) {
    const std::size_t count = view.count(values.size());
    double l = values[view.offset];
    double h = l;
#pragma omp parallel for schedule(static) reduction(min : l) reduction(max : h)
    for (Index k = 0; k < as_index(count); ++k) {
        const double v = values[view.offset + static_cast<std::size_t>(k) * view.step];
        l = std::min(l, v);
        h = std::max(h, v);
    }
    lo = l;
    hi = h;
}

std::vector<std::uint64_t> histogram(std::span<const double> values, Strided view, double lo, double hi, int bins) {
    const auto nb = static_cast<std::size_t>(bins);
    std::vector<std::uint64_t> counts(nb, 0);
    const std::size_t count = view.count(values.size());
    const double scale = bins / (hi - lo);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(nb, 0);
#pragma omp for schedule(static) nowait
        for (Index k = 0; k < as_index(count); ++k) {
            const double v = values[view.offset + static_cast<std::size_t>(k) * view.step];
            const auto b = std::clamp(static_cast<long>(std::floor((v - lo) * scale)), 0L, static_cast<long>(bins - 1));
            ++local[static_cast<std::size_t>(b)];
        }
#pragma omp critical
        for (std::size_t b = 0; b < nb; ++b) counts[b] += local[b];
    }
    return counts;
}

void map_values(std::span<const double> in, std::span<double> out, Strided view, const Transfer1D& transfer) {
    const std::size_t count = view.count(in.size());
#pragma omp parallel for schedule(static)
    for (Index k = 0; k < as_index(count); ++k) {
        const std::size_t i = view.offset + static_cast<std::size_t>(k) * view.step;
        out[i] = transfer(in[i]);
    }
}

void luma(std::span<const double> rgb, std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (Index p = 0; p < as_index(out.size()); ++p) {
        const std::size_t i = 3 * static_cast<std::size_t>(p);
        out[static_cast<std::size_t>(p)] = detail::luma601(rgb[i], rgb[i + 1], rgb[i + 2]);
    }
}

void filter_valid(std::span<const double> in, int width, int height, std::span<const double> taps,
                  std::span<double> out) {
    const int k = static_cast<int>(taps.size());
    const int ow = width - k + 1;
    const int oh = height - k + 1;
    std::vector<double> rows(static_cast<std::size_t>(ow) * static_cast<std::size_t>(height));
#pragma omp parallel
    {
#pragma omp for schedule(static)
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < ow; ++x) {
                double acc = 0.0;
                for (int t = 0; t < k; ++t)
                    acc += taps[static_cast<std::size_t>(t)] * in[static_cast<std::size_t>(y * width + x + t)];
                rows[static_cast<std::size_t>(y * ow + x)] = acc;
            }
#pragma omp for schedule(static)
        for (int y = 0; y < oh; ++y)
            for (int x = 0; x < ow; ++x) {
                double acc = 0.0;
                for (int t = 0; t < k; ++t)
                    acc += taps[static_cast<std::size_t>(t)] * rows[static_cast<std::size_t>((y + t) * ow + x)];
                out[static_cast<std::size_t>(y * ow + x)] = acc;
            }
    }
}

double ssim_mean(std::span<const double> a, std::span<const double> b, int width, int height,
                 std::span<const double> taps, double c1, double c2) {
    const std::size_t n = a.size();
    std::vector<double> aa(n), bb(n), ab(n);
#pragma omp parallel for schedule(static)
    for (Index j = 0; j < as_index(n); ++j) {
        const auto i = static_cast<std::size_t>(j);
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

    const std::size_t blocks = block_count(m);
    std::vector<double> partial(blocks);
#pragma omp parallel for schedule(static)
    for (Index bi = 0; bi < as_index(blocks); ++bi) {
        const std::size_t start = static_cast<std::size_t>(bi) * kReduceBlock;
        const std::size_t end = std::min(m, start + kReduceBlock);
        double block = 0.0;
        for (std::size_t i = start; i < end; ++i)
            block += detail::ssim_at(mu_a[i], mu_b[i], s_aa[i], s_bb[i], s_ab[i], c1, c2);
        partial[static_cast<std::size_t>(bi)] = block;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total / static_cast<double>(m);
}

void regrain_half_sweep(std::span<double> out, std::span<const double> source, std::span<const double> mapped,
                        std::span<const double> lambda, int width, int height, int parity) {
    // same-colour pixels share no neighbours, so rows update independently
#pragma omp parallel for schedule(static)
    for (int y = 0; y < height; ++y)
        for (int x = (y + parity) % 2; x < width; x += 2)
            for (int c = 0; c < 3; ++c)
                out[3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) +
                    static_cast<std::size_t>(c)] = detail::regrain_update(out, source, mapped, lambda, width, height, x, y, c);
}

}  // namespace omp
}  // namespace stereocolor::kernels
