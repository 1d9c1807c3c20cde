#include "stereocolor/idt.hpp"

#include <algorithm>
#include <cmath>

#include "stereocolor/errors.hpp"
#include "stereocolor/histogram.hpp"
#include "stereocolor/kernels.hpp"
#include "stereocolor/rng.hpp"

namespace stereocolor {

namespace {

std::size_t histogram_stride(std::size_t samples) {
    if (samples <= kIdtFullSampleLimit) return 1;
    return (samples + kIdtFullSampleLimit - 1) / kIdtFullSampleLimit;
}

/// Transfer for one channel of interleaved (or plain) buffers. Histograms use every
/// `stride`-th sample; the range covers all samples so no input falls outside it.
Transfer1D channel_transfer(std::span<const double> target, std::span<const double> reference, std::size_t channel,
                            std::size_t step, int bins) {
    double t_lo = 0.0, t_hi = 0.0, r_lo = 0.0, r_hi = 0.0;
    kernels::omp::min_max(target, {channel, step}, t_lo, t_hi);
    kernels::omp::min_max(reference, {channel, step}, r_lo, r_hi);
    if (r_lo == r_hi) return Transfer1D::constant(r_lo);
    const double lo = std::min(t_lo, r_lo);
    const double hi = std::max(t_hi, r_hi);
    const std::size_t t_stride = histogram_stride(target.size() / step);
    const std::size_t r_stride = histogram_stride(reference.size() / step);
    return Transfer1D::from_histograms(Histogram1D::build(target, channel, step * t_stride, lo, hi, bins),
                                       Histogram1D::build(reference, channel, step * r_stride, lo, hi, bins));
}

}  // namespace

void IdtConfig::validate() const {
    if (iterations < 1) throw InvalidArgument("idt: iterations must be >= 1");
    if (bins < 16) throw InvalidArgument("idt: bins must be >= 16");
    if (!(regrain_strength >= 0.0)) throw InvalidArgument("idt: regrain strength must be non-negative");
}

Mat3 random_rotation(std::uint64_t seed, std::uint64_t iteration) {
    Rng rng(mix64(seed, iteration));
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0, norm = 0.0;
    do {
        w = rng.normal();
        x = rng.normal();
        y = rng.normal();
        z = rng.normal();
        norm = std::sqrt(w * w + x * x + y * y + z * z);
    } while (norm < 1e-6);
    w /= norm;
    x /= norm;
    y /= norm;
    z /= norm;
    Mat3 r;
    r(0, 0) = 1.0 - 2.0 * (y * y + z * z);
    r(0, 1) = 2.0 * (x * y - w * z);
    r(0, 2) = 2.0 * (x * z + w * y);
    r(1, 0) = 2.0 * (x * y + w * z);
    r(1, 1) = 1.0 - 2.0 * (x * x + z * z);
    r(1, 2) = 2.0 * (y * z - w * x);
    r(2, 0) = 2.0 * (x * z - w * y);
    r(2, 1) = 2.0 * (y * z + w * x);
    r(2, 2) = 1.0 - 2.0 * (x * x + y * y);
    return r;
}

std::vector<double> pdf_transfer_1d(std::span<const double> target, std::span<const double> reference, int bins) {
    if (target.empty() || reference.empty()) throw InvalidArgument("pdf_transfer_1d: empty sequence");
    if (bins < 1) throw InvalidArgument("pdf_transfer_1d: bins must be positive");
    std::vector<double> mapped(target.size());
    const Transfer1D transfer = channel_transfer(target, reference, 0, 1, bins);
    kernels::omp::map_values(target, mapped, {0, 1}, transfer);
    return mapped;
}

void idt_step(std::span<double> points, std::span<const double> reference, const Mat3& rotation, int bins) {
    std::vector<double> proj_t(points.size());
    std::vector<double> proj_r(reference.size());
    kernels::omp::affine(points, proj_t, rotation, {});
    kernels::omp::affine(reference, proj_r, rotation, {});
    for (std::size_t axis = 0; axis < 3; ++axis) {
        const Transfer1D transfer = channel_transfer(proj_t, proj_r, axis, 3, bins);
        kernels::omp::map_values(proj_t, proj_t, {axis, 3}, transfer);
    }
    kernels::omp::affine(proj_t, points, transpose(rotation), {});
}

Image idt_transfer(const Image& target, const Image& reference, const IdtConfig& config, const IdtObserver& observer) {
    config.validate();
    if (target.empty() || reference.empty()) throw InvalidArgument("idt: empty image");
    std::vector<double> points(target.data().begin(), target.data().end());
    for (int it = 0; it < config.iterations; ++it) {
        idt_step(points, reference.data(), random_rotation(config.seed, static_cast<std::uint64_t>(it)), config.bins);
        if (observer) observer(it + 1, Image(target.width(), target.height(), points));
    }
    Image mapped(target.width(), target.height(), std::move(points));
    if (config.regrain && config.regrain_strength > 0.0) mapped = regrain(target, mapped, config.regrain_strength);
    clamp_in_place(mapped);
    return mapped;
}

double wasserstein1(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw InvalidArgument("wasserstein1: empty sample");
    std::vector<double> sa(a.begin(), a.end());
    std::vector<double> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    // integrate |F_a - F_b| over the merged support
    std::size_t i = 0, j = 0;
    double total = 0.0;
    double x = std::min(sa.front(), sb.front());
    while (i < sa.size() || j < sb.size()) {
        const double next = (j >= sb.size() || (i < sa.size() && sa[i] <= sb[j])) ? sa[i] : sb[j];
        total += std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb) * (next - x);
        x = next;
        while (i < sa.size() && sa[i] == x) ++i;
        while (j < sb.size() && sb[j] == x) ++j;
    }
    return total;
}

double projected_wasserstein1(const Image& a, const Image& b, const Vec3& axis) {
    const auto project = [&](const Image& img) {
        std::vector<double> out(img.pixel_count());
        for (std::size_t p = 0; p < out.size(); ++p) {
            const Vec3 v = img.pixel(p);
            out[p] = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
        }
        return out;
    };
    return wasserstein1(project(a), project(b));
}

double regrain_lambda(double strength, double source_gradient) {
    return 1.0 / (strength * (1.0 + 10.0 * source_gradient));
}

std::vector<double> regrain_weights(const Image& src, double strength) {
    if (!(strength > 0.0)) throw InvalidArgument("regrain: weights need a positive strength");
    const int w = src.width();
    const int h = src.height();
    std::vector<double> lambda(src.pixel_count());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            double g2 = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double v = src.at(x, y, c);
                const double dx = x + 1 < w ? src.at(x + 1, y, c) - v : 0.0;
                const double dy = y + 1 < h ? src.at(x, y + 1, c) - v : 0.0;
                g2 += dx * dx + dy * dy;
            }
            lambda[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] =
                regrain_lambda(strength, std::sqrt(g2));
        }
    return lambda;
}

double regrain_energy(const Image& out, const Image& src, const Image& mapped, std::span<const double> lambda) {
    if (!out.same_shape(src) || !out.same_shape(mapped)) throw DimensionMismatch("regrain_energy: image sizes differ");
    const int w = out.width();
    const int h = out.height();
    double gradient = 0.0;
    double fidelity = 0.0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double l = lambda[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)];
            for (int c = 0; c < 3; ++c) {
                const double o = out.at(x, y, c);
                const double s = src.at(x, y, c);
                if (x + 1 < w) {
                    const double d = (out.at(x + 1, y, c) - o) - (src.at(x + 1, y, c) - s);
                    gradient += d * d;
                }
                if (y + 1 < h) {
                    const double d = (out.at(x, y + 1, c) - o) - (src.at(x, y + 1, c) - s);
                    gradient += d * d;
                }
                const double f = o - mapped.at(x, y, c);
                fidelity += l * f * f;
            }
        }
    return gradient + fidelity;
}

Image regrain(const Image& src, const Image& mapped, double strength, const RegrainObserver& observer) {
    if (!src.same_shape(mapped)) throw DimensionMismatch("regrain: image sizes differ");
    if (!(strength >= 0.0)) throw InvalidArgument("regrain: strength must be non-negative");
    if (strength == 0.0) return mapped;
    const std::vector<double> lambda = regrain_weights(src, strength);
    Image out = mapped;
    for (int sweep = 1; sweep <= kRegrainSweeps; ++sweep) {
        kernels::omp::regrain_half_sweep(out.data(), src.data(), mapped.data(), lambda, src.width(), src.height(), 0);
        kernels::omp::regrain_half_sweep(out.data(), src.data(), mapped.data(), lambda, src.width(), src.height(), 1);
        if (observer) observer(sweep, regrain_energy(out, src, mapped, lambda));
    }
    return out;
}

}  // namespace stereocolor
